#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pgl/parallel.hpp"
#include "pgl/semantics.hpp"

namespace pgl {

// The pointwise-largest possibility distribution satisfying every clause:
// pi_star(I) = min over clauses (phi, w) of max(1 - w, I(phi)). Every model
// of the program lies below it; it is itself a model iff normalized.
struct LeastSpecificModel {
  PossibilityDistribution pi_star;
  bool normalized;
};

LeastSpecificModel least_specific_model(const Program& program, const SpacePtr& space,
                                        Exec exec = Exec::parallel);

struct SemanticDegree {
  Degree degree;
  // False when the program has no normalized model on this space; entailment
  // is then vacuous and degree is reported as 1.
  bool satisfiable;
};

// Maximum degree of possibilistic entailment of the goal: the least
// necessity over models, attained at the least-specific model because
// N([q] | .) is antitone and all models lie below pi_star.
SemanticDegree semantic_degree(const Program& program, const std::string& goal,
                               const SpacePtr& space, Exec exec = Exec::parallel);

struct EnumerationResult {
  Degree best;
  bool exhausted;  // the step budget ran out before the closure stabilized
};

// Syntactic ground truth, independent of the engine: closes the full sets of
// achievable (atom, degree) pairs under the triviality axiom, program facts,
// GMP, SU, IN and UN, then reports the maximum for the goal. Optionally also
// closes downward under weakening (restricted to the finite degree lattice),
// which never changes any maximum.
EnumerationResult enumerate_derivations(const Program& program, const std::string& goal,
                                        std::size_t max_steps = 64,
                                        bool with_weakening = false);

// {0, 1} + clause weights + pairwise match necessities between same-sort
// interpretations: the finite lattice every derivable degree lives in.
std::vector<Degree> degree_lattice(const Program& program);

enum class WitnessKind { fact_case, rule_case, head_max_case };

struct WitnessParams {
  std::string goal;
  Degree gamma;                    // clause weight of the proof case
  std::optional<std::size_t> i0;   // index of I0 in the space
  std::optional<std::size_t> i1;   // index of I1 (fact / head-max cases)
  std::string rule_body;           // r, for the rule case's I0(r) <= I0(q)
};

// The completeness-proof distributions: fact_case puts pi(I1)=1 and
// pi(I0)=1-gamma with I0(q) < 1-gamma and I1(q)=1; rule_case is the point
// mass on I0 with I0(r) <= I0(q) < 1; head_max_case additionally requires
// I0 and I1 to make every other atom fully true. Throws Error when the
// requested interpretations are absent or violate their side conditions.
PossibilityDistribution witness_distribution(WitnessKind kind, const SpacePtr& space,
                                             const WitnessParams& params);

}  // namespace pgl
