#pragma once

#include <nlohmann/json_fwd.hpp>

#include "pgl/degrees.hpp"
#include "pgl/engine.hpp"

namespace pgl {

// JSON forms used by the CLI: degrees and rationals are always exact
// {"num": .., "den": ..} objects; proof traces are
// {"conclusion", "degree", "rule", "premises", "side_conditions"} trees.
nlohmann::json rational_to_json(const Rational& r);
nlohmann::json degree_to_json(const Degree& d);
Degree degree_from_json(const nlohmann::json& j);
nlohmann::json trace_to_json(const ProofNode& node);

}  // namespace pgl
