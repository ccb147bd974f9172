#include <doctest.h>

#include <algorithm>

#include "pgl/engine.hpp"
#include "pgl/errors.hpp"
#include "pgl/oracle.hpp"
#include "pgl/parser.hpp"
#include "support/axioms.hpp"
#include "support/generators.hpp"

using namespace pgl;
using testgen::abstract_program;
using testgen::three_grid;

namespace {

SpacePtr default_space(const Program& p, std::size_t cap = 1u << 20) {
  return InterpretationSpace::build(p, default_truth_grid(p), cap);
}

}  // namespace

TEST_CASE("least-specific model on small programs") {
  SUBCASE("no clauses leave everything fully possible") {
    Program p = abstract_program({"q"});
    auto space = InterpretationSpace::build(p, three_grid(), 100);
    auto model = least_specific_model(p, space);
    CHECK(model.normalized);
    for (const auto& v : model.pi_star.values) CHECK(v == Degree::one());
  }
  SUBCASE("a fully certain fact caps possibility at the atom's truth") {
    Program p = parse_program("var q\nclause (q, 1)\n");
    auto space = InterpretationSpace::build(p, three_grid(), 100);
    auto model = least_specific_model(p, space);
    CHECK(model.normalized);
    for (std::size_t i = 0; i < space->size(); ++i) {
      CHECK(model.pi_star.values[i] == space->truth(i, "q"));
    }
  }
  SUBCASE("the fuzzy-unification example bounds pi by the premise minimum") {
    Program p = parse_program(
        "sort years = 0..120\n"
        "var john_is_about_16 : years = trapezoid(14, 16, 16, 18)\n"
        "var john_is_14_16 : years = trapezoid(12, 14, 16, 18)\n"
        "var john_is_16_18 : years = trapezoid(14, 16, 18, 20)\n"
        "clause (john_is_14_16, 1)\nclause (john_is_16_18, 1)\n");
    auto space = default_space(p);
    auto model = least_specific_model(p, space);
    CHECK(model.normalized);
    for (std::size_t i = 0; i < space->size(); ++i) {
      CHECK(model.pi_star.values[i] ==
            std::min(space->truth(i, "john_is_14_16"), space->truth(i, "john_is_16_18")));
    }
    CHECK(semantic_degree(p, "john_is_about_16", space).degree == Degree::one());
  }
}

TEST_CASE("semantic degrees of the completeness base cases") {
  Program fact = parse_program("var q\nclause (q, 0.75)\n");
  auto res = semantic_degree(fact, "q", default_space(fact));
  CHECK(res.satisfiable);
  CHECK(res.degree == Degree::parse("0.75"));

  Program rule = parse_program("var q\nvar r\nclause (r -> q, 0.75)\n");
  auto res2 = semantic_degree(rule, "q", default_space(rule));
  CHECK(res2.satisfiable);
  CHECK(res2.degree == Degree::zero());
}

TEST_CASE("pi_star is itself a model whenever it is normalized") {
  testgen::Rng rng(61);
  for (int iter = 0; iter < 60; ++iter) {
    Program p = iter % 2 == 0 ? testgen::random_abstract_program(rng)
                              : testgen::random_contextual_program(rng);
    auto space = default_space(p);
    auto model = least_specific_model(p, space);
    if (!model.normalized) continue;
    for (const auto& c : p.clauses) {
      CHECK(satisfies(model.pi_star, c));
    }
  }
}

TEST_CASE("the infimum is attained at pi_star") {
  testgen::Rng rng(67);
  Program p = testgen::random_abstract_program(rng, 3, 4);
  while (p.clauses.empty() || p.vars.empty()) p = testgen::random_abstract_program(rng, 3, 4);
  auto space = default_space(p);
  auto model = least_specific_model(p, space);
  REQUIRE(model.normalized);
  const std::string goal = p.vars[0].name;
  Degree bound = semantic_degree(p, goal, space).degree;
  auto goal_formula = Formula::atom(goal);
  const auto& grid = space->truth_grid();
  for (int iter = 0; iter < 1000; ++iter) {
    // Any distribution below pi_star scores at least the oracle degree.
    std::vector<Degree> values;
    values.reserve(space->size());
    for (std::size_t i = 0; i < space->size(); ++i) {
      values.push_back(std::min(model.pi_star.values[i], rng.pick(grid)));
    }
    CHECK(necessity_of_formula(*goal_formula, {space, values}) >= bound);
  }
}

TEST_CASE("context-free programs are always satisfiable") {
  testgen::Rng rng(71);
  for (int iter = 0; iter < 100; ++iter) {
    Program p = testgen::random_abstract_program(rng);
    if (p.vars.empty()) continue;
    auto res = semantic_degree(p, p.vars[0].name, default_space(p));
    CHECK(res.satisfiable);
  }
}

TEST_CASE("contextual programs can be unsatisfiable, reported as a flag") {
  Program p = parse_program(
      "sort s = 0..10\n"
      "var low : s = trapezoid(0, 0, 2, 3)\n"
      "var high : s = trapezoid(7, 8, 10, 10)\n"
      "clause (low, 1)\nclause (high, 1)\n");
  auto res = semantic_degree(p, "low", default_space(p));
  CHECK(!res.satisfiable);
  CHECK(res.degree == Degree::one());
}

TEST_CASE("semantic degrees are stable under grid refinement") {
  testgen::Rng rng(73);
  for (int iter = 0; iter < 40; ++iter) {
    Program p = testgen::random_abstract_program(rng);
    if (p.vars.empty()) continue;
    auto base = default_truth_grid(p);
    auto fine = refine_grid(base);
    for (const auto& v : p.vars) {
      Degree coarse = semantic_degree(p, v.name, InterpretationSpace::build(p, base, 1u << 22)).degree;
      Degree refined = semantic_degree(p, v.name, InterpretationSpace::build(p, fine, 1u << 22)).degree;
      CHECK(coarse == refined);
    }
  }
}

TEST_CASE("derivation enumeration on the worked programs") {
  Program p = parse_program(
      "var mary_is_young\nvar john_is_young\nvar friend_mary_john\n"
      "clause (mary_is_young, 0.8)\nclause (john_is_young, 0.9)\n"
      "clause (mary_is_young & john_is_young -> friend_mary_john, 0.6)\n");
  auto res = enumerate_derivations(p, "friend_mary_john");
  CHECK(res.best == Degree::parse("0.6"));
  CHECK(!res.exhausted);

  Program empty = parse_program("var q\n");
  CHECK(enumerate_derivations(empty, "q").best == Degree::zero());

  CHECK_THROWS_AS(enumerate_derivations(empty, "nope"), UnknownAtomError);
}

TEST_CASE("enumeration agrees with saturation and ignores weakening") {
  testgen::Rng rng(79);
  for (int iter = 0; iter < 120; ++iter) {
    Program p = iter % 3 == 2 ? testgen::random_contextual_program(rng)
                              : testgen::random_abstract_program(rng, 3, 4);
    DerivationState state = saturate(p);
    for (const auto& v : p.vars) {
      auto plain = enumerate_derivations(p, v.name);
      CHECK(!plain.exhausted);
      CHECK(plain.best == state.degree_of(v.name));
      auto weakened = enumerate_derivations(p, v.name, 64, true);
      CHECK(weakened.best == plain.best);
    }
  }
}

TEST_CASE("a tight step budget reports exhaustion with the best so far") {
  Program p = parse_program(
      "var a\nvar b\nvar c\nvar d\n"
      "clause (a, 1)\nclause (a -> b, 1)\nclause (b -> c, 1)\nclause (c -> d, 1)\n");
  auto res = enumerate_derivations(p, "d", 2);
  CHECK(res.exhausted);
  CHECK(res.best < Degree::one());
  auto full = enumerate_derivations(p, "d");
  CHECK(!full.exhausted);
  CHECK(full.best == Degree::one());
}

TEST_CASE("witness distributions from the completeness proof") {
  SUBCASE("fact case") {
    Program p = parse_program("var q\nclause (q, 0.9)\n");
    auto space = default_space(p);
    WitnessParams params;
    params.goal = "q";
    params.gamma = Degree::parse("0.9");
    params.i1 = space->index_of(Interpretation{{}, {Degree::one()}});
    params.i0 = space->index_of(Interpretation{{}, {Degree::parse("0.05")}});
    auto pi = witness_distribution(WitnessKind::fact_case, space, params);
    CHECK(pi.values[*params.i1] == Degree::one());
    CHECK(pi.values[*params.i0] == Degree::parse("0.1"));
    CHECK(necessity_of_formula(*Formula::atom("q"), pi) == Degree::parse("0.9"));
    CHECK(satisfies(pi, p.clauses[0]));

    // The same construction certifies the upper bound independently.
    CHECK(semantic_degree(p, "q", space).degree <= Degree::parse("0.9"));
  }
  SUBCASE("rule case") {
    Program p = parse_program("var q\nvar r\nclause (r -> q, 0.8)\n");
    auto space = default_space(p);
    WitnessParams params;
    params.goal = "q";
    params.rule_body = "r";
    params.gamma = Degree::parse("0.8");
    params.i0 = space->index_of(Interpretation{{}, {Degree::zero(), Degree::zero()}});
    auto pi = witness_distribution(WitnessKind::rule_case, space, params);
    CHECK(necessity_of_formula(*Formula::atom("q"), pi) == Degree::zero());
    CHECK(satisfies(pi, p.clauses[0]));
  }
  SUBCASE("head-max case on a multi-clause program") {
    Program p = parse_program("var q\nvar p\nclause (q, 0.75)\nclause (p, 0.5)\n");
    auto space = default_space(p);
    WitnessParams params;
    params.goal = "q";
    params.gamma = Degree::parse("0.75");
    params.i1 = space->index_of(Interpretation{{}, {Degree::one(), Degree::one()}});
    params.i0 = space->index_of(Interpretation{{}, {Degree::parse("0.125"), Degree::one()}});
    auto pi = witness_distribution(WitnessKind::head_max_case, space, params);
    CHECK(necessity_of_formula(*Formula::atom("q"), pi) == Degree::parse("0.75"));
    for (const auto& c : p.clauses) CHECK(satisfies(pi, c));
  }
  SUBCASE("requested interpretations are validated") {
    Program p = parse_program("var q\nclause (q, 0.9)\n");
    auto space = default_space(p);
    WitnessParams params;
    params.goal = "q";
    params.gamma = Degree::parse("0.9");
    CHECK_THROWS(witness_distribution(WitnessKind::fact_case, space, params));
    params.i1 = space->index_of(Interpretation{{}, {Degree::parse("0.5")}});
    params.i0 = space->index_of(Interpretation{{}, {Degree::zero()}});
    CHECK_THROWS(witness_distribution(WitnessKind::fact_case, space, params));  // I1(q) != 1
  }
}

TEST_CASE("degree lattice contents") {
  Program p = parse_program(
      "sort s = 0..10\n"
      "var a : s = trapezoid(0, 2, 4, 6)\n"
      "var b : s = trapezoid(2, 4, 6, 8)\n"
      "clause (a, 0.7)\n");
  auto lattice = degree_lattice(p);
  CHECK(std::find(lattice.begin(), lattice.end(), Degree::zero()) != lattice.end());
  CHECK(std::find(lattice.begin(), lattice.end(), Degree::one()) != lattice.end());
  CHECK(std::find(lattice.begin(), lattice.end(), Degree::parse("0.7")) != lattice.end());
  CHECK(std::find(lattice.begin(), lattice.end(),
                  necessity_of_match(p.context->set_of("b"), p.context->set_of("a"))) !=
        lattice.end());
}

TEST_CASE("serial and parallel model construction agree exactly") {
  testgen::Rng rng(83);
  for (int iter = 0; iter < 15; ++iter) {
    Program p = testgen::random_abstract_program(rng, 4, 6);
    auto space = InterpretationSpace::build(
        p, refine_grid(default_truth_grid(p)), 1u << 22);
    auto serial = least_specific_model(p, space, Exec::serial);
    auto parallel = least_specific_model(p, space, Exec::parallel);
    CHECK(serial.normalized == parallel.normalized);
    CHECK(serial.pi_star.values == parallel.pi_star.values);
  }
}
