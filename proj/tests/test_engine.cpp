#include <doctest.h>

#include <algorithm>

#include "pgl/engine.hpp"
#include "pgl/errors.hpp"
#include "pgl/oracle.hpp"
#include "pgl/parser.hpp"
#include "support/generators.hpp"

using namespace pgl;

namespace {

const char* kExample1 = R"(
var mary_is_young
var john_is_young
var friend_mary_john
clause (mary_is_young, 0.8)
clause (john_is_young, 0.9)
clause (mary_is_young & john_is_young -> friend_mary_john, 0.6)
)";

const char* kExample3 = R"(
sort john_years_old = 0..120
var john_is_about_16 : john_years_old = trapezoid(14, 16, 16, 18)
var john_is_14_16 : john_years_old = trapezoid(12, 14, 16, 18)
var john_is_16_18 : john_years_old = trapezoid(14, 16, 18, 20)
clause (john_is_14_16, 1)
clause (john_is_16_18, 1)
)";

void check_replays(const ProofNode& node) {
  CHECK(node.replay() == node.degree);
  for (const auto& p : node.premises) check_replays(*p);
}

Context years_context(std::initializer_list<std::pair<std::string, FuzzySet>> sets) {
  Context ctx;
  for (const auto& [name, set] : sets) ctx.add_interp(name, set);
  return ctx;
}

}  // namespace

TEST_CASE("saturation reproduces the friendship degree") {
  Program p = parse_program(kExample1);
  auto [degree, proof] = query(p, "friend_mary_john");
  CHECK(degree == Degree(Rational(3, 5)));
  REQUIRE(proof);
  CHECK(proof->rule == RuleKind::gmp);
  CHECK(proof->premises.size() == 2);
  CHECK(proof->side.at("clause_weight") == Degree::parse("0.6"));
  check_replays(*proof);
}

TEST_CASE("gmp rule application") {
  Program p = parse_program(kExample1);
  DerivationState state = saturate(p);

  SUBCASE("an improving application") {
    DerivationState fresh;
    fresh.best = {{"mary_is_young", Degree::parse("0.8")},
                  {"john_is_young", Degree::parse("0.9")},
                  {"friend_mary_john", Degree::zero()}};
    auto got = apply_gmp(p.clauses[2], fresh);
    REQUIRE(got);
    CHECK(got->first == "friend_mary_john");
    CHECK(got->second == Degree::parse("0.6"));
  }
  SUBCASE("a body atom at zero pins the conclusion to zero") {
    DerivationState fresh;
    fresh.best = {{"mary_is_young", Degree::zero()},
                  {"john_is_young", Degree::parse("0.9")},
                  {"friend_mary_john", Degree::zero()}};
    CHECK(!apply_gmp(p.clauses[2], fresh));
  }
  SUBCASE("degree propagates the weaker of weight and premise") {
    Program pr = parse_program("var p\nvar q\nclause (p -> q, 0.7)\n");
    DerivationState fresh;
    fresh.best = {{"p", Degree::parse("0.4")}, {"q", Degree::zero()}};
    auto got = apply_gmp(pr.clauses[0], fresh);
    REQUIRE(got);
    CHECK(got->second == Degree::parse("0.4"));
  }
  SUBCASE("nothing new when the head is already as good") {
    CHECK(!apply_gmp(p.clauses[2], state));
  }
}

TEST_CASE("su rule application on the worked context") {
  Program p = parse_program(kExample3);
  const Context& ctx = *p.context;

  auto zero = apply_su({"john_is_14_16", Degree::one()}, "john_is_about_16", ctx);
  CHECK(zero.second == Degree::zero());
  auto same = apply_su({"john_is_14_16", Degree::parse("0.7")}, "john_is_14_16", ctx);
  CHECK(same.second == Degree::parse("0.7"));

  // Nested pair: premise support inside the target core, so the match is 1.
  Program nested = parse_program(
      "sort years = 0..120\n"
      "var wide : years = trapezoid(14, 16, 16, 18)\n"
      "var narrow : years = trapezoid(15, 16, 16, 17)\n");
  auto lifted = apply_su({"narrow", Degree::parse("0.9")}, "wide", *nested.context);
  CHECK(lifted.second == Degree::parse("0.9"));
}

TEST_CASE("in rule application") {
  Program p = parse_program(kExample3);
  const Context& ctx = *p.context;

  auto got = apply_in({"john_is_14_16", Degree::one()}, {"john_is_16_18", Degree::one()},
                      "john_is_about_16", ctx);
  REQUIRE(got);
  CHECK(got->second == Degree::one());

  auto same = apply_in({"john_is_14_16", Degree::parse("0.6")},
                       {"john_is_14_16", Degree::parse("0.6")}, "john_is_14_16", ctx);
  REQUIRE(same);
  CHECK(same->second == Degree::parse("0.6"));

  // Target core narrower than the pointwise minimum: rule inapplicable.
  CHECK(!apply_in({"john_is_16_18", Degree::one()}, {"john_is_16_18", Degree::one()},
                  "john_is_about_16", ctx));
}

TEST_CASE("un rule application") {
  auto d = SortDomain::integer_range("years", 0, 120);
  FuzzySet base = trapezoid_to_fuzzy(Trapezoid(Rational(14), Rational(16), Rational(16),
                                               Rational(18)), d);
  SUBCASE("full certainty reduces the condition to dominance") {
    Context ctx = years_context({{"p", base}});
    auto got = apply_un({"p", Degree::one()}, "p", ctx);
    REQUIRE(got);
    CHECK(got->second == Degree::one());
  }
  SUBCASE("a clipped target absorbs partial certainty") {
    // mu_target = max(0.4, mu_p) dominates max(1 - 0.6, mu_p) by construction.
    Context ctx = years_context({{"p", base}, {"clipped", raise_to(base, Degree::parse("0.4"))}});
    auto got = apply_un({"p", Degree::parse("0.6")}, "clipped", ctx);
    REQUIRE(got);
    CHECK(got->second == Degree::one());
    CHECK(!apply_un({"p", Degree::parse("0.5")}, "clipped", ctx));
  }
  SUBCASE("zero certainty needs an all-ones target, which normalization forbids") {
    Context ctx = years_context({{"p", base}});
    CHECK(!apply_un({"p", Degree::zero()}, "p", ctx));
  }
}

TEST_CASE("saturation on the fuzzy-unification example") {
  Program p = parse_program(kExample3);
  auto [degree, proof] = query(p, "john_is_about_16");
  CHECK(degree == Degree::one());
  REQUIRE(proof);
  CHECK(proof->rule == RuleKind::in);
  REQUIRE(proof->premises.size() == 2);
  CHECK(proof->premises[0]->rule == RuleKind::fact);
  CHECK(proof->premises[1]->rule == RuleKind::fact);
  check_replays(*proof);
}

TEST_CASE("recursive-only heads stay at zero") {
  Program p = parse_program("var p\nvar q\nclause (p & q -> q, 0.9)\n");
  CHECK(query(p, "q").first == Degree::zero());
  CHECK(saturate(p).degree_of("p") == Degree::zero());
}

TEST_CASE("query on degenerate programs") {
  Program empty = parse_program("var q\n");
  auto [degree, proof] = query(empty, "q");
  CHECK(degree == Degree::zero());
  CHECK(proof->rule == RuleKind::axiom0);

  Program fact = parse_program("var q\nclause (q, 0.7)\n");
  CHECK(query(fact, "q").first == Degree::parse("0.7"));

  Program rule = parse_program("var q\nvar r\nclause (r -> q, 0.7)\n");
  CHECK(query(rule, "q").first == Degree::zero());

  CHECK_THROWS_AS(query(empty, "nope"), UnknownAtomError);
}

TEST_CASE("proposition 2: a fact through a rule yields the minimum") {
  testgen::Rng rng(31);
  auto weights = testgen::quarter_weights();
  for (int iter = 0; iter < 200; ++iter) {
    Degree beta = rng.pick(weights);
    Degree gamma = rng.pick(weights);
    Program p;
    p.vars = {VarDecl{"p", std::nullopt, std::nullopt, {}},
              VarDecl{"q", std::nullopt, std::nullopt, {}}};
    p.clauses = {Clause{{}, "p", beta}, Clause{{"p"}, "q", gamma}};
    validate_program(p);
    CHECK(query(p, "q").first == std::min(beta, gamma));
  }
}

TEST_CASE("proposition 1: recursive-only heads derive nothing") {
  testgen::Rng rng(37);
  for (int iter = 0; iter < 200; ++iter) {
    Program p = testgen::random_abstract_program(rng);
    // Make every clause with head q recursive by injecting q into its body.
    const std::string goal = "a0";
    for (auto& c : p.clauses) {
      if (c.head == goal && !c.recursive()) c.body.push_back(goal);
    }
    validate_program(p);
    CHECK(query(p, goal).first == Degree::zero());
  }
}

TEST_CASE("proposition 4: clauses consuming the goal cannot raise it") {
  testgen::Rng rng(41);
  int exercised = 0;
  for (int iter = 0; iter < 400 && exercised < 200; ++iter) {
    Program p = testgen::random_abstract_program(rng);
    const std::string goal = "a0";
    auto uses_goal = [&](const Clause& c) {
      return std::find(c.body.begin(), c.body.end(), goal) != c.body.end();
    };
    auto it = std::find_if(p.clauses.begin(), p.clauses.end(), uses_goal);
    if (it == p.clauses.end()) continue;
    ++exercised;
    Degree with = query(p, goal).first;
    Program reduced = p;
    reduced.clauses.erase(reduced.clauses.begin() + (it - p.clauses.begin()));
    validate_program(reduced);
    CHECK(query(reduced, goal).first == with);
  }
  CHECK(exercised == 200);
}

TEST_CASE("monotonicity: adding a clause never lowers a degree") {
  testgen::Rng rng(43);
  auto weights = testgen::quarter_weights();
  for (int iter = 0; iter < 200; ++iter) {
    Program p = testgen::random_abstract_program(rng);
    DerivationState before = saturate(p);
    Program extended = p;
    Clause extra;
    extra.head = "a0";
    if (rng.chance(0.5) && p.vars.size() > 1) extra.body.push_back(p.vars[1].name);
    extra.weight = rng.pick(weights);
    extended.clauses.push_back(extra);
    validate_program(extended);
    DerivationState after = saturate(extended);
    for (const auto& [atom, degree] : before.best) {
      CHECK(after.degree_of(atom) >= degree);
    }
  }
}

TEST_CASE("saturation strategies and shuffles reach one fixpoint") {
  testgen::Rng rng(47);
  for (int iter = 0; iter < 60; ++iter) {
    Program p = iter % 2 == 0 ? testgen::random_abstract_program(rng)
                              : testgen::random_contextual_program(rng);
    DerivationState reference = saturate(p);
    SaturateOptions naive;
    naive.strategy = SaturateOptions::Strategy::naive;
    CHECK(saturate(p, naive).best == reference.best);
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      SaturateOptions shuffled;
      shuffled.shuffle_seed = seed;
      CHECK(saturate(p, shuffled).best == reference.best);
    }
  }
}

TEST_CASE("derived degrees live in the finite lattice and traces replay") {
  testgen::Rng rng(53);
  for (int iter = 0; iter < 80; ++iter) {
    Program p = iter % 2 == 0 ? testgen::random_abstract_program(rng)
                              : testgen::random_contextual_program(rng);
    auto lattice = degree_lattice(p);
    DerivationState state = saturate(p);
    for (const auto& [atom, degree] : state.best) {
      CHECK(std::find(lattice.begin(), lattice.end(), degree) != lattice.end());
      check_replays(*state.proof_of(atom));
      CHECK(state.proof_of(atom)->atom == atom);
      CHECK(state.proof_of(atom)->degree == degree);
    }
  }
}

TEST_CASE("duplicate clauses are kept and harmless") {
  Program p = parse_program("var q\nclause (q, 0.5)\nclause (q, 0.5)\nclause (q, 0.25)\n");
  CHECK(p.clauses.size() == 3);
  CHECK(query(p, "q").first == Degree::parse("0.5"));
}
