#include "pgl/oracle.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "pgl/engine.hpp"
#include "pgl/errors.hpp"

namespace pgl {

namespace {

constexpr std::size_t kParallelGrain = 2048;

}  // namespace

LeastSpecificModel least_specific_model(const Program& program, const SpacePtr& space,
                                        Exec exec) {
  std::vector<BoundFormula> formulas;
  std::vector<Degree> slack;  // 1 - weight per clause
  formulas.reserve(program.clauses.size());
  for (const auto& c : program.clauses) {
    formulas.emplace_back(*space, *clause_formula(c));
    slack.push_back(c.weight.complement());
  }

  const std::size_t n = space->size();
  std::vector<Degree> values(n, Degree::one());

  auto fill_range = [&](std::size_t begin, std::size_t end, std::vector<Degree>& scratch) {
    for (std::size_t i = begin; i < end; ++i) {
      Degree v = Degree::one();
      for (std::size_t c = 0; c < formulas.size(); ++c) {
        v = std::min(v, std::max(slack[c], formulas[c].eval(*space, i, scratch)));
      }
      values[i] = v;
    }
  };

  if (exec == Exec::serial || n < kParallelGrain) {
    std::vector<Degree> scratch;
    fill_range(0, n, scratch);
  } else {
#pragma omp parallel
    {
      std::vector<Degree> scratch;
#pragma omp for schedule(static)
      for (long long i = 0; i < static_cast<long long>(n); ++i) {
        fill_range(static_cast<std::size_t>(i), static_cast<std::size_t>(i) + 1, scratch);
      }
    }
  }

  PossibilityDistribution pi{space, std::move(values)};
  bool normalized = pi.normalized();
  return {std::move(pi), normalized};
}

SemanticDegree semantic_degree(const Program& program, const std::string& goal,
                               const SpacePtr& space, Exec exec) {
  if (!program.find_var(goal)) throw UnknownAtomError(goal);
  LeastSpecificModel model = least_specific_model(program, space, exec);
  if (!model.normalized) return {Degree::one(), false};
  return {necessity_of_formula(*Formula::atom(goal), model.pi_star, exec), true};
}

std::vector<Degree> degree_lattice(const Program& program) {
  std::set<Degree> values{Degree::zero(), Degree::one()};
  for (const auto& c : program.clauses) values.insert(c.weight);
  if (program.contextual()) {
    const Context& ctx = *program.context;
    std::map<std::string, std::vector<const FuzzySet*>> by_sort;
    for (const auto& v : program.vars) {
      if (v.abstract()) continue;
      by_sort[*v.sort].push_back(&ctx.set_of(v.name));
    }
    for (const auto& [sort, sets] : by_sort) {
      for (const auto* a : sets) {
        for (const auto* b : sets) {
          values.insert(necessity_of_match(*b, *a));
        }
      }
    }
  }
  return std::vector<Degree>(values.begin(), values.end());
}

namespace {

// Values reachable as min(d1, ..., dk) with di drawn from the given sets:
// the min of a tuple equals one of its coordinates, so a value d is
// reachable iff d belongs to some set and every set reaches at least d.
std::vector<Degree> reachable_mins(const std::vector<const std::set<Degree>*>& sets) {
  Degree cap = Degree::one();
  for (const auto* s : sets) {
    if (s->empty()) return {};
    cap = std::min(cap, *s->rbegin());
  }
  std::set<Degree> out;
  for (const auto* s : sets) {
    for (const auto& d : *s) {
      if (d <= cap) out.insert(d);
    }
  }
  return std::vector<Degree>(out.begin(), out.end());
}

}  // namespace

EnumerationResult enumerate_derivations(const Program& program, const std::string& goal,
                                        std::size_t max_steps, bool with_weakening) {
  if (!program.find_var(goal)) throw UnknownAtomError(goal);

  std::map<std::string, std::set<Degree>> achieved;
  for (const auto& v : program.vars) achieved[v.name] = {Degree::zero()};

  std::vector<std::string> sorted_atoms;
  if (program.contextual()) {
    for (const auto& v : program.vars) {
      if (!v.abstract()) sorted_atoms.push_back(v.name);
    }
  }
  auto same_sort = [&](const std::string& a, const std::string& b) {
    return *program.find_var(a)->sort == *program.find_var(b)->sort;
  };
  const Context* ctx = program.contextual() ? &*program.context : nullptr;

  std::vector<Degree> lattice = with_weakening ? degree_lattice(program) : std::vector<Degree>{};

  bool exhausted = true;
  for (std::size_t step = 0; step < max_steps; ++step) {
    auto snapshot = achieved;
    auto add = [&](const std::string& atom, const Degree& d) {
      achieved[atom].insert(d);
    };

    for (const auto& c : program.clauses) {
      if (c.fact()) {
        add(c.head, c.weight);
        continue;
      }
      std::vector<const std::set<Degree>*> body_sets;
      body_sets.reserve(c.body.size());
      for (const auto& b : c.body) body_sets.push_back(&snapshot.at(b));
      for (const auto& m : reachable_mins(body_sets)) {
        add(c.head, std::min(c.weight, m));
      }
    }

    for (const auto& p : sorted_atoms) {
      for (const auto& t : sorted_atoms) {
        if (!same_sort(p, t)) continue;
        Degree beta = necessity_of_match(ctx->set_of(t), ctx->set_of(p));
        for (const auto& d : snapshot.at(p)) add(t, std::min(d, beta));
      }
    }
    for (const auto& p1 : sorted_atoms) {
      for (const auto& p2 : sorted_atoms) {
        if (p2 < p1 || !same_sort(p1, p2)) continue;
        FuzzySet lower = pointwise_min(ctx->set_of(p1), ctx->set_of(p2));
        std::vector<const std::set<Degree>*> premise_sets{&snapshot.at(p1), &snapshot.at(p2)};
        std::vector<Degree> mins = reachable_mins(premise_sets);
        for (const auto& t : sorted_atoms) {
          if (!same_sort(t, p1) || !dominates(ctx->set_of(t), lower)) continue;
          for (const auto& m : mins) add(t, m);
        }
      }
    }
    for (const auto& p : sorted_atoms) {
      for (const auto& d : snapshot.at(p)) {
        FuzzySet lower = raise_to(ctx->set_of(p), d.complement());
        for (const auto& t : sorted_atoms) {
          if (!same_sort(p, t)) continue;
          if (dominates(ctx->set_of(t), lower)) add(t, Degree::one());
        }
      }
    }

    if (with_weakening) {
      for (auto& [atom, set] : achieved) {
        Degree top = *set.rbegin();
        for (const auto& v : lattice) {
          if (v <= top) set.insert(v);
        }
      }
    }

    if (achieved == snapshot) {
      exhausted = false;
      break;
    }
  }

  return {*achieved.at(goal).rbegin(), exhausted};
}

namespace {

Degree space_truth(const SpacePtr& space, std::size_t idx, const std::string& atom) {
  return space->truth(idx, atom);
}

std::size_t checked_index(const SpacePtr& space, const std::optional<std::size_t>& idx,
                          const char* which) {
  if (!idx || *idx >= space->size()) {
    throw Error(std::string("requested interpretation ") + which + " absent from the space");
  }
  return *idx;
}

void require_all_true_except(const SpacePtr& space, std::size_t idx,
                             const std::string& except) {
  for (std::size_t s = 0; s < space->atom_count(); ++s) {
    const std::string& name = space->atom_name(s);
    if (name == except) continue;
    if (space->truth_slot(idx, s) != Degree::one()) {
      throw Error("interpretation must make every atom but '" + except + "' fully true");
    }
  }
}

}  // namespace

PossibilityDistribution witness_distribution(WitnessKind kind, const SpacePtr& space,
                                             const WitnessParams& params) {
  std::vector<Degree> values(space->size(), Degree::zero());
  switch (kind) {
    case WitnessKind::fact_case:
    case WitnessKind::head_max_case: {
      std::size_t i1 = checked_index(space, params.i1, "I1");
      if (space_truth(space, i1, params.goal) != Degree::one()) {
        throw Error("I1 must make the goal fully true");
      }
      if (kind == WitnessKind::head_max_case) require_all_true_except(space, i1, "");
      values[i1] = Degree::one();
      if (params.gamma < Degree::one()) {
        std::size_t i0 = checked_index(space, params.i0, "I0");
        if (!(space_truth(space, i0, params.goal) < params.gamma.complement())) {
          throw Error("I0 must give the goal truth below 1 - gamma");
        }
        if (kind == WitnessKind::head_max_case) {
          require_all_true_except(space, i0, params.goal);
        }
        values[i0] = params.gamma.complement();
      }
      break;
    }
    case WitnessKind::rule_case: {
      std::size_t i0 = checked_index(space, params.i0, "I0");
      Degree q = space_truth(space, i0, params.goal);
      Degree r = space_truth(space, i0, params.rule_body);
      if (!(r <= q && q < Degree::one())) {
        throw Error("I0 must satisfy I0(r) <= I0(q) < 1");
      }
      values[i0] = Degree::one();
      break;
    }
  }
  return {space, std::move(values)};
}

}  // namespace pgl
