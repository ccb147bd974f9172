#include <chrono>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "pgl/engine.hpp"
#include "pgl/errors.hpp"
#include "pgl/json_io.hpp"
#include "pgl/oracle.hpp"
#include "pgl/parser.hpp"
#include "pgl/semantics.hpp"

namespace {

using nlohmann::json;

struct QueryFlags {
  std::string file;
  std::string goal;
  bool trace = false;
  bool oracle = false;
  bool as_json = false;
  bool timings = false;
  bool naive = false;
  std::optional<std::uint64_t> seed;
  std::string grid_step;
  std::size_t max_space = 2'000'000;
};

struct QueryResult {
  std::string goal;
  pgl::Degree degree;
  pgl::ProofPtr trace;
  std::optional<pgl::Degree> oracle_degree;
  std::optional<bool> satisfiable;
  std::map<std::string, double> timings_ms;
};

double ms_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

pgl::SaturateOptions saturate_options(const QueryFlags& flags) {
  pgl::SaturateOptions opts;
  if (flags.naive) opts.strategy = pgl::SaturateOptions::Strategy::naive;
  opts.shuffle_seed = flags.seed;
  return opts;
}

std::vector<pgl::Degree> oracle_grid(const pgl::Program& program, const QueryFlags& flags) {
  std::vector<pgl::Degree> grid = pgl::default_truth_grid(program);
  if (!flags.grid_step.empty()) {
    pgl::Rational step = pgl::Rational::parse(flags.grid_step);
    if (!(step > pgl::Rational(0) && step <= pgl::Rational(1))) {
      throw pgl::Error("--grid-step must be in (0, 1]");
    }
    for (pgl::Rational v(0); v < pgl::Rational(1); v = v + step) {
      grid.push_back(pgl::Degree(v));
    }
    grid.push_back(pgl::Degree::one());
  }
  return grid;
}

QueryResult run_one_query(const pgl::Program& program, const std::string& goal,
                          const QueryFlags& flags) {
  QueryResult result;
  result.goal = goal;

  auto t0 = std::chrono::steady_clock::now();
  auto [degree, proof] = pgl::query(program, goal, saturate_options(flags));
  result.timings_ms["saturate"] = ms_since(t0);
  result.degree = degree;
  result.trace = proof;
  if (!program.contextual()) result.satisfiable = true;

  if (flags.oracle) {
    auto t1 = std::chrono::steady_clock::now();
    auto space = pgl::InterpretationSpace::build(program, oracle_grid(program, flags),
                                                 flags.max_space);
    pgl::SemanticDegree sem = pgl::semantic_degree(program, goal, space);
    result.timings_ms["oracle"] = ms_since(t1);
    result.oracle_degree = sem.degree;
    result.satisfiable = sem.satisfiable;
  }
  return result;
}

json result_to_json(const QueryResult& r, const QueryFlags& flags) {
  json out{{"goal", r.goal}, {"degree", pgl::degree_to_json(r.degree)}};
  if (r.satisfiable) out["satisfiable"] = *r.satisfiable;
  if (r.oracle_degree) {
    out["oracle_degree"] = pgl::degree_to_json(*r.oracle_degree);
    out["divergence"] =
        pgl::rational_to_json(r.oracle_degree->value() - r.degree.value());
  }
  if (flags.trace && r.trace) out["trace"] = pgl::trace_to_json(*r.trace);
  if (flags.timings) out["timings_ms"] = r.timings_ms;
  return out;
}

void print_trace(std::ostream& os, const pgl::ProofNode& node, int depth) {
  os << std::string(static_cast<std::size_t>(depth) * 2 + 2, ' ') << node.atom << " = "
     << node.degree << " [" << pgl::rule_kind_name(node.rule);
  if (node.clause_index) os << ", clause " << *node.clause_index;
  for (const auto& [key, value] : node.side) os << ", " << key << "=" << value;
  os << "]\n";
  for (const auto& p : node.premises) print_trace(os, *p, depth + 1);
}

void print_result(const QueryResult& r, const QueryFlags& flags) {
  std::cout << r.degree << "\n";
  if (r.oracle_degree) {
    std::cout << "oracle " << *r.oracle_degree;
    if (r.satisfiable && !*r.satisfiable) std::cout << " (unsatisfiable)";
    std::cout << "\n";
    if (*r.oracle_degree != r.degree) {
      std::cout << "divergence " << (r.oracle_degree->value() - r.degree.value()).str() << "\n";
    }
  }
  if (flags.trace && r.trace) {
    std::cout << "trace:\n";
    print_trace(std::cout, *r.trace, 0);
  }
}

int cmd_query(const QueryFlags& flags) {
  pgl::Program program = pgl::parse_program_file(flags.file);
  std::vector<std::string> goals;
  if (!flags.goal.empty()) {
    goals.push_back(flags.goal);
  } else {
    for (const auto& q : program.queries) goals.push_back(q.goal);
    if (goals.empty()) {
      throw pgl::Error("no --goal given and the file declares no queries");
    }
  }

  std::vector<QueryResult> results;
  results.reserve(goals.size());
  for (const auto& g : goals) results.push_back(run_one_query(program, g, flags));

  if (flags.as_json) {
    if (results.size() == 1) {
      std::cout << result_to_json(results[0], flags).dump(2) << "\n";
    } else {
      json arr = json::array();
      for (const auto& r : results) arr.push_back(result_to_json(r, flags));
      std::cout << arr.dump(2) << "\n";
    }
  } else {
    for (const auto& r : results) print_result(r, flags);
  }
  if (flags.timings && !flags.as_json) {
    for (const auto& r : results) {
      for (const auto& [phase, ms] : r.timings_ms) {
        std::cerr << r.goal << " " << phase << " " << ms << " ms\n";
      }
    }
  }
  return 0;
}

int cmd_check(const std::string& file) {
  pgl::Program program = pgl::parse_program_file(file);
  std::cout << "ok: " << program.sorts.size() << " sorts, " << program.vars.size()
            << " atoms, " << program.clauses.size() << " clauses, " << program.queries.size()
            << " queries\n";
  return 0;
}

int cmd_saturate(const std::string& file, bool as_json, bool naive,
                 std::optional<std::uint64_t> seed) {
  pgl::Program program = pgl::parse_program_file(file);
  pgl::SaturateOptions opts;
  if (naive) opts.strategy = pgl::SaturateOptions::Strategy::naive;
  opts.shuffle_seed = seed;
  pgl::DerivationState state = pgl::saturate(program, opts);
  if (as_json) {
    json atoms = json::object();
    for (const auto& [atom, degree] : state.best) atoms[atom] = pgl::degree_to_json(degree);
    std::cout << json{{"atoms", std::move(atoms)}}.dump(2) << "\n";
  } else {
    for (const auto& v : program.vars) {
      std::cout << v.name << " " << state.degree_of(v.name) << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PGL: possibilistic Godel logic programs with fuzzy propositional variables"};
  app.require_subcommand(1);

  QueryFlags flags;
  auto* query = app.add_subcommand("query", "compute the entailment degree of a goal");
  query->add_option("file", flags.file, "program file (.pgl)")->required();
  query->add_option("--goal", flags.goal, "goal atom (default: the file's query statements)");
  query->add_flag("--trace", flags.trace, "print the proof behind the degree");
  query->add_flag("--oracle", flags.oracle, "also compute the semantic oracle degree");
  query->add_option("--grid-step", flags.grid_step,
                    "additionally refine the oracle truth grid with multiples of this rational");
  query->add_flag("--json", flags.as_json, "JSON output");
  query->add_option("--max-space", flags.max_space,
                    "cap on the enumerated interpretation space");
  query->add_flag("--naive", flags.naive, "naive full-pass saturation (default: semi-naive)");
  std::uint64_t seed_value = 0;
  auto* seed_opt = query->add_option("--seed", seed_value, "shuffle rule application order");
  query->add_flag("--timings", flags.timings, "report per-phase timings");

  std::string check_file;
  auto* check = app.add_subcommand("check", "parse and validate a program");
  check->add_option("file", check_file, "program file (.pgl)")->required();

  std::string saturate_file;
  bool saturate_json = false, saturate_naive = false;
  std::uint64_t saturate_seed_value = 0;
  auto* sat = app.add_subcommand("saturate", "derive every atom's degree");
  sat->add_option("file", saturate_file, "program file (.pgl)")->required();
  sat->add_flag("--json", saturate_json, "JSON output");
  sat->add_flag("--naive", saturate_naive, "naive full-pass saturation");
  auto* sat_seed_opt = sat->add_option("--seed", saturate_seed_value, "shuffle rule order");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (query->parsed()) {
      if (seed_opt->count() > 0) flags.seed = seed_value;
      return cmd_query(flags);
    }
    if (check->parsed()) return cmd_check(check_file);
    if (sat->parsed()) {
      std::optional<std::uint64_t> seed;
      if (sat_seed_opt->count() > 0) seed = saturate_seed_value;
      return cmd_saturate(saturate_file, saturate_json, saturate_naive, seed);
    }
  } catch (const pgl::SpaceCapError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
