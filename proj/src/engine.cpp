#include "pgl/engine.hpp"

#include <algorithm>
#include <random>

#include "pgl/errors.hpp"
#include "pgl/fuzzy.hpp"

namespace pgl {

const char* rule_kind_name(RuleKind kind) {
  switch (kind) {
    case RuleKind::axiom0: return "axiom0";
    case RuleKind::fact: return "fact";
    case RuleKind::gmp: return "gmp";
    case RuleKind::su: return "su";
    case RuleKind::in: return "in";
    case RuleKind::un: return "un";
  }
  return "?";
}

Degree ProofNode::replay() const {
  switch (rule) {
    case RuleKind::axiom0:
      return Degree::zero();
    case RuleKind::fact:
      return side.at("clause_weight");
    case RuleKind::gmp: {
      Degree d = side.at("clause_weight");
      for (const auto& p : premises) d = std::min(d, p->degree);
      return d;
    }
    case RuleKind::su:
      return std::min(premises.at(0)->degree, side.at("match_necessity"));
    case RuleKind::in:
      return std::min(premises.at(0)->degree, premises.at(1)->degree);
    case RuleKind::un:
      return Degree::one();
  }
  throw Error("corrupt proof node");
}

const Degree& DerivationState::degree_of(const std::string& atom) const {
  auto it = best.find(atom);
  if (it == best.end()) throw UnknownAtomError(atom);
  return it->second;
}

const ProofPtr& DerivationState::proof_of(const std::string& atom) const {
  auto it = trace.find(atom);
  if (it == trace.end()) throw UnknownAtomError(atom);
  return it->second;
}

std::optional<std::pair<std::string, Degree>> apply_gmp(const Clause& rule,
                                                        const DerivationState& state) {
  if (rule.fact()) throw Error("apply_gmp needs a rule with a non-empty body");
  Degree d = rule.weight;
  for (const auto& b : rule.body) d = std::min(d, state.degree_of(b));
  if (d <= state.degree_of(rule.head)) return std::nullopt;
  return std::make_pair(rule.head, d);
}

std::pair<std::string, Degree> apply_su(const std::pair<std::string, Degree>& premise,
                                        const std::string& target, const Context& ctx) {
  Degree beta = necessity_of_match(ctx.set_of(target), ctx.set_of(premise.first));
  return {target, std::min(premise.second, beta)};
}

std::optional<std::pair<std::string, Degree>> apply_in(
    const std::pair<std::string, Degree>& premise1,
    const std::pair<std::string, Degree>& premise2, const std::string& target,
    const Context& ctx) {
  FuzzySet lower = pointwise_min(ctx.set_of(premise1.first), ctx.set_of(premise2.first));
  if (!dominates(ctx.set_of(target), lower)) return std::nullopt;
  return std::make_pair(target, std::min(premise1.second, premise2.second));
}

std::optional<std::pair<std::string, Degree>> apply_un(
    const std::pair<std::string, Degree>& premise, const std::string& target,
    const Context& ctx) {
  FuzzySet lower = raise_to(ctx.set_of(premise.first), premise.second.complement());
  if (!dominates(ctx.set_of(target), lower)) return std::nullopt;
  return std::make_pair(target, Degree::one());
}

namespace {

class Saturator {
 public:
  Saturator(const Program& program, const SaturateOptions& options)
      : program_(program), options_(options) {
    for (const auto& v : program.vars) {
      ids_.emplace(v.name, names_.size());
      names_.push_back(v.name);
    }
    best_.assign(names_.size(), Degree::zero());
    trace_.reserve(names_.size());
    for (const auto& name : names_) {
      auto node = std::make_shared<ProofNode>();
      node->atom = name;
      node->rule = RuleKind::axiom0;
      trace_.push_back(std::move(node));
    }
    if (program.contextual()) index_context();
  }

  DerivationState run() {
    std::vector<Candidate> candidates;
    gen_facts(candidates);
    if (options_.strategy == SaturateOptions::Strategy::naive) {
      gen_all_rules(candidates);
    }
    std::mt19937_64 rng(options_.shuffle_seed.value_or(0));

    while (true) {
      if (options_.shuffle_seed) std::shuffle(candidates.begin(), candidates.end(), rng);
      std::vector<bool> changed(names_.size(), false);
      bool any = false;
      for (auto& c : candidates) {
        if (c.degree > best_[c.atom]) {
          best_[c.atom] = c.degree;
          trace_[c.atom] = c.node;
          changed[c.atom] = true;
          any = true;
        }
      }
      if (!any) break;
      candidates.clear();
      if (options_.strategy == SaturateOptions::Strategy::naive) {
        gen_facts(candidates);
        gen_all_rules(candidates);
      } else {
        gen_frontier_rules(changed, candidates);
      }
    }

    DerivationState state;
    for (std::size_t i = 0; i < names_.size(); ++i) {
      state.best.emplace(names_[i], best_[i]);
      state.trace.emplace(names_[i], trace_[i]);
    }
    return state;
  }

 private:
  struct Candidate {
    std::size_t atom;
    Degree degree;
    ProofPtr node;
  };

  void index_context() {
    const Context& ctx = *program_.context;
    sets_.assign(names_.size(), nullptr);
    min_membership_.assign(names_.size(), Degree::zero());
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (!ctx.interprets(names_[i])) continue;
      sets_[i] = &ctx.set_of(names_[i]);
      Degree lo = Degree::one();
      for (const auto& d : sets_[i]->membership()) lo = std::min(lo, d);
      min_membership_[i] = lo;
    }
    // Group sorted atoms per sort; the declared vocabulary is the closure
    // SU/IN/UN targets range over.
    std::map<std::string, std::vector<std::size_t>> by_sort;
    for (const auto& v : program_.vars) {
      if (!v.abstract()) by_sort[*v.sort].push_back(ids_.at(v.name));
    }
    for (auto& [sort, group] : by_sort) groups_.push_back(std::move(group));

    su_beta_.assign(names_.size() * names_.size(), std::nullopt);
    for (const auto& group : groups_) {
      for (std::size_t p : group) {
        for (std::size_t t : group) {
          su_beta_[p * names_.size() + t] = necessity_of_match(*sets_[t], *sets_[p]);
        }
      }
    }
    for (const auto& group : groups_) {
      for (std::size_t p1 : group) {
        for (std::size_t p2 : group) {
          if (p2 < p1) continue;
          FuzzySet lower = pointwise_min(*sets_[p1], *sets_[p2]);
          for (std::size_t t : group) {
            if (dominates(*sets_[t], lower)) {
              in_targets_[{p1, p2}].push_back(t);
            }
          }
        }
      }
    }
  }

  ProofPtr make_node(std::size_t atom, Degree degree, RuleKind rule,
                     std::vector<ProofPtr> premises, std::map<std::string, Degree> side,
                     std::optional<std::size_t> clause_index = std::nullopt) {
    auto node = std::make_shared<ProofNode>();
    node->atom = names_[atom];
    node->degree = degree;
    node->rule = rule;
    node->premises = std::move(premises);
    node->side = std::move(side);
    node->clause_index = clause_index;
    return node;
  }

  void gen_facts(std::vector<Candidate>& out) {
    for (std::size_t ci = 0; ci < program_.clauses.size(); ++ci) {
      const Clause& c = program_.clauses[ci];
      if (!c.fact() || c.weight == Degree::zero()) continue;
      std::size_t head = ids_.at(c.head);
      out.push_back({head, c.weight,
                     make_node(head, c.weight, RuleKind::fact, {},
                               {{"clause_weight", c.weight}}, ci)});
    }
  }

  void gen_gmp(std::size_t ci, std::vector<Candidate>& out) {
    const Clause& c = program_.clauses[ci];
    Degree d = c.weight;
    std::vector<ProofPtr> premises;
    premises.reserve(c.body.size());
    for (const auto& b : c.body) {
      std::size_t id = ids_.at(b);
      d = std::min(d, best_[id]);
      premises.push_back(trace_[id]);
    }
    if (d == Degree::zero()) return;
    std::size_t head = ids_.at(c.head);
    out.push_back({head, d,
                   make_node(head, d, RuleKind::gmp, std::move(premises),
                             {{"clause_weight", c.weight}}, ci)});
  }

  void gen_su_from(std::size_t p, std::vector<Candidate>& out) {
    if (!sets_[p] || best_[p] == Degree::zero()) return;
    for (std::size_t t = 0; t < names_.size(); ++t) {
      const auto& beta = su_beta_[p * names_.size() + t];
      if (!beta || t == p) continue;
      Degree d = std::min(best_[p], *beta);
      if (d == Degree::zero()) continue;
      out.push_back({t, d,
                     make_node(t, d, RuleKind::su, {trace_[p]},
                               {{"match_necessity", *beta}})});
    }
  }

  void gen_in_pair(std::size_t p1, std::size_t p2, std::vector<Candidate>& out) {
    if (p2 < p1) std::swap(p1, p2);
    auto it = in_targets_.find({p1, p2});
    if (it == in_targets_.end()) return;
    Degree d = std::min(best_[p1], best_[p2]);
    if (d == Degree::zero()) return;
    for (std::size_t t : it->second) {
      out.push_back({t, d, make_node(t, d, RuleKind::in, {trace_[p1], trace_[p2]}, {})});
    }
  }

  void gen_un_from(std::size_t p, std::vector<Candidate>& out) {
    if (!sets_[p] || best_[p] == Degree::zero()) return;
    Degree floor = best_[p].complement();
    for (std::size_t t = 0; t < names_.size(); ++t) {
      const auto& beta = su_beta_[p * names_.size() + t];
      if (!beta) continue;
      // mu_t >= max(1 - a, mu_p) splits into dominance plus a floor check.
      if (*beta == Degree::one() && min_membership_[t] >= floor) {
        out.push_back({t, Degree::one(),
                       make_node(t, Degree::one(), RuleKind::un, {trace_[p]}, {})});
      }
    }
  }

  void gen_all_rules(std::vector<Candidate>& out) {
    for (std::size_t ci = 0; ci < program_.clauses.size(); ++ci) {
      if (!program_.clauses[ci].fact()) gen_gmp(ci, out);
    }
    if (!program_.contextual()) return;
    for (const auto& group : groups_) {
      for (std::size_t p : group) {
        gen_su_from(p, out);
        gen_un_from(p, out);
        for (std::size_t p2 : group) {
          if (p2 >= p) gen_in_pair(p, p2, out);
        }
      }
    }
  }

  void gen_frontier_rules(const std::vector<bool>& changed, std::vector<Candidate>& out) {
    for (std::size_t ci = 0; ci < program_.clauses.size(); ++ci) {
      const Clause& c = program_.clauses[ci];
      if (c.fact()) continue;
      bool hit = false;
      for (const auto& b : c.body) hit = hit || changed[ids_.at(b)];
      if (hit) gen_gmp(ci, out);
    }
    if (!program_.contextual()) return;
    for (const auto& group : groups_) {
      for (std::size_t p : group) {
        if (!changed[p]) continue;
        gen_su_from(p, out);
        gen_un_from(p, out);
        for (std::size_t p2 : group) gen_in_pair(p, p2, out);
      }
    }
  }

  const Program& program_;
  SaturateOptions options_;
  std::vector<std::string> names_;
  std::map<std::string, std::size_t> ids_;
  std::vector<Degree> best_;
  std::vector<ProofPtr> trace_;
  std::vector<const FuzzySet*> sets_;
  std::vector<Degree> min_membership_;
  std::vector<std::vector<std::size_t>> groups_;
  std::vector<std::optional<Degree>> su_beta_;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> in_targets_;
};

}  // namespace

DerivationState saturate(const Program& program, const SaturateOptions& options) {
  return Saturator(program, options).run();
}

std::pair<Degree, ProofPtr> query(const Program& program, const std::string& goal,
                                  const SaturateOptions& options) {
  if (!program.find_var(goal)) throw UnknownAtomError(goal);
  DerivationState state = saturate(program, options);
  return {state.degree_of(goal), state.proof_of(goal)};
}

}  // namespace pgl
