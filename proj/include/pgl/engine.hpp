#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pgl/ast.hpp"

namespace pgl {

enum class RuleKind { axiom0, fact, gmp, su, in, un };

const char* rule_kind_name(RuleKind kind);

struct ProofNode;
using ProofPtr = std::shared_ptr<const ProofNode>;

// One step of a derivation. Premise nodes are immutable snapshots taken when
// the step fired, so replay() always reproduces the conclusion degree from
// the premises it actually used.
struct ProofNode {
  std::string atom;
  Degree degree;
  RuleKind rule = RuleKind::axiom0;
  std::vector<ProofPtr> premises;
  std::map<std::string, Degree> side;       // e.g. clause_weight, match_necessity
  std::optional<std::size_t> clause_index;  // provenance for fact/gmp steps

  // Recomputes the conclusion degree from the rule arithmetic.
  Degree replay() const;
};

// Saturation result: every declared atom's best derived degree (the maximum
// degree of deduction) and the proof that achieved it. Atoms nothing derives
// stay at 0 with an axiom0 trace.
struct DerivationState {
  std::map<std::string, Degree> best;
  std::map<std::string, ProofPtr> trace;

  const Degree& degree_of(const std::string& atom) const;   // throws UnknownAtomError
  const ProofPtr& proof_of(const std::string& atom) const;  // throws UnknownAtomError
};

struct SaturateOptions {
  enum class Strategy { semi_naive, naive };
  Strategy strategy = Strategy::semi_naive;
  // Shuffles the order rule instances are applied in each pass; the fixpoint
  // must not depend on it.
  std::optional<std::uint64_t> shuffle_seed;
};

// Generalized modus ponens: from (body -> head, w) and the current best body
// degrees, conclude (head, min(w, degrees)). Returns nothing unless that
// exceeds the current best for the head.
std::optional<std::pair<std::string, Degree>> apply_gmp(const Clause& rule,
                                                        const DerivationState& state);

// Semantical unification: (p, a) yields (target, min(a, N(m(target) | m(p)))).
std::pair<std::string, Degree> apply_su(const std::pair<std::string, Degree>& premise,
                                        const std::string& target, const Context& ctx);

// Intersection: (p1, a), (p2, b) yield (target, min(a, b)) when m(target)
// dominates the pointwise minimum of m(p1) and m(p2).
std::optional<std::pair<std::string, Degree>> apply_in(
    const std::pair<std::string, Degree>& premise1,
    const std::pair<std::string, Degree>& premise2, const std::string& target,
    const Context& ctx);

// Uncertainty resolution: (p, a) yields (target, 1) when m(target) dominates
// u -> max(1 - a, mu_m(p)(u)).
std::optional<std::pair<std::string, Degree>> apply_un(
    const std::pair<std::string, Degree>& premise, const std::string& target,
    const Context& ctx);

// Bottom-up least fixpoint over the triviality axiom, program facts, GMP and
// (in a context) SU/IN/UN. Degrees only increase and live in the finite
// lattice {0, 1} + clause weights + pairwise match necessities, so this
// always terminates; best[q] is the maximum degree of deduction of q.
DerivationState saturate(const Program& program, const SaturateOptions& options = {});

// Degree and proof for one goal. Throws UnknownAtomError for goals outside
// the declared vocabulary.
std::pair<Degree, ProofPtr> query(const Program& program, const std::string& goal,
                                  const SaturateOptions& options = {});

}  // namespace pgl
