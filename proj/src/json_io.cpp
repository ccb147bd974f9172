#include "pgl/json_io.hpp"

#include <nlohmann/json.hpp>

namespace pgl {

nlohmann::json rational_to_json(const Rational& r) {
  return nlohmann::json{{"num", r.num()}, {"den", r.den()}};
}

nlohmann::json degree_to_json(const Degree& d) { return rational_to_json(d.value()); }

Degree degree_from_json(const nlohmann::json& j) {
  return Degree(Rational(j.at("num").get<std::int64_t>(), j.at("den").get<std::int64_t>()));
}

nlohmann::json trace_to_json(const ProofNode& node) {
  nlohmann::json premises = nlohmann::json::array();
  for (const auto& p : node.premises) premises.push_back(trace_to_json(*p));
  nlohmann::json side = nlohmann::json::object();
  for (const auto& [key, value] : node.side) side[key] = degree_to_json(value);
  nlohmann::json out{{"goal", node.atom},
                     {"degree", degree_to_json(node.degree)},
                     {"rule", rule_kind_name(node.rule)},
                     {"premises", std::move(premises)},
                     {"side_conditions", std::move(side)}};
  if (node.clause_index) out["clause"] = *node.clause_index;
  return out;
}

}  // namespace pgl
