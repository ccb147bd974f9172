#include "pgl/semantics.hpp"

#include <algorithm>
#include <set>

#include "pgl/errors.hpp"

namespace pgl {

namespace {

constexpr std::size_t kParallelGrain = 2048;

}  // namespace

FormulaPtr Formula::atom(std::string name) {
  return FormulaPtr(new Formula(Kind::atom, std::move(name), nullptr, nullptr));
}
FormulaPtr Formula::zero() { return FormulaPtr(new Formula(Kind::zero, "", nullptr, nullptr)); }
FormulaPtr Formula::conj(FormulaPtr a, FormulaPtr b) {
  return FormulaPtr(new Formula(Kind::conj, "", std::move(a), std::move(b)));
}
FormulaPtr Formula::impl(FormulaPtr a, FormulaPtr b) {
  return FormulaPtr(new Formula(Kind::impl, "", std::move(a), std::move(b)));
}
FormulaPtr Formula::disj(FormulaPtr a, FormulaPtr b) {
  return FormulaPtr(new Formula(Kind::disj, "", std::move(a), std::move(b)));
}
FormulaPtr Formula::neg(FormulaPtr a) {
  return FormulaPtr(new Formula(Kind::neg, "", std::move(a), nullptr));
}
FormulaPtr Formula::equiv(FormulaPtr a, FormulaPtr b) {
  return FormulaPtr(new Formula(Kind::equiv, "", std::move(a), std::move(b)));
}

std::string Formula::str() const {
  switch (kind_) {
    case Kind::atom: return atom_;
    case Kind::zero: return "0";
    case Kind::conj: return "(" + lhs_->str() + " & " + rhs_->str() + ")";
    case Kind::impl: return "(" + lhs_->str() + " -> " + rhs_->str() + ")";
    case Kind::disj: return "(" + lhs_->str() + " | " + rhs_->str() + ")";
    case Kind::neg: return "!" + lhs_->str();
    case Kind::equiv: return "(" + lhs_->str() + " == " + rhs_->str() + ")";
  }
  return "?";
}

FormulaPtr clause_formula(const Clause& clause) {
  FormulaPtr head = Formula::atom(clause.head);
  if (clause.body.empty()) return head;
  FormulaPtr body = Formula::atom(clause.body.front());
  for (std::size_t i = 1; i < clause.body.size(); ++i) {
    body = Formula::conj(std::move(body), Formula::atom(clause.body[i]));
  }
  return Formula::impl(std::move(body), std::move(head));
}

std::shared_ptr<const InterpretationSpace> InterpretationSpace::build(
    const Program& program, std::vector<Degree> truth_grid, std::size_t max_size) {
  if (!program.sorts.empty() && !program.contextual()) {
    throw Error("program has sorts but no validated context");
  }
  auto space = std::make_shared<InterpretationSpace>();

  std::sort(truth_grid.begin(), truth_grid.end());
  truth_grid.erase(std::unique(truth_grid.begin(), truth_grid.end()), truth_grid.end());
  if (truth_grid.empty() || truth_grid.front() != Degree::zero() ||
      truth_grid.back() != Degree::one()) {
    throw Error("truth grid must contain 0 and 1");
  }
  space->grid_ = std::move(truth_grid);

  for (const auto& s : program.sorts) {
    space->sort_axes_.push_back({s.name, program.context->domain_of_sort(s.name), 0});
  }
  for (const auto& v : program.vars) {
    if (v.abstract()) space->abstract_atoms_.push_back(v.name);
  }

  // Mixed-radix layout, last axis fastest.
  std::size_t axis_count = space->sort_axes_.size() + space->abstract_atoms_.size();
  std::vector<std::size_t> sizes;
  sizes.reserve(axis_count);
  for (const auto& ax : space->sort_axes_) sizes.push_back(ax.domain->size());
  for (std::size_t i = 0; i < space->abstract_atoms_.size(); ++i) {
    sizes.push_back(space->grid_.size());
  }
  __int128 total = 1;
  for (std::size_t s : sizes) {
    total *= static_cast<__int128>(s);
    if (total > static_cast<__int128>(max_size)) {
      throw SpaceCapError(static_cast<std::size_t>(
                              std::min<__int128>(total, static_cast<__int128>(~std::size_t{0}))),
                          max_size);
    }
  }
  space->size_ = static_cast<std::size_t>(total);

  std::vector<std::size_t> strides(axis_count, 1);
  for (std::size_t i = axis_count; i-- > 1;) {
    strides[i - 1] = strides[i] * sizes[i];
  }
  for (std::size_t i = 0; i < space->sort_axes_.size(); ++i) {
    space->sort_axes_[i].stride = strides[i];
  }
  space->abstract_strides_.assign(strides.begin() + space->sort_axes_.size(), strides.end());

  // Memberships are copied up front so the atom tables can point into them.
  std::size_t sorted_count = 0;
  for (const auto& v : program.vars) {
    if (!v.abstract()) ++sorted_count;
  }
  space->memberships_.reserve(sorted_count);

  for (const auto& v : program.vars) {
    AtomAxis ax;
    ax.name = v.name;
    if (v.abstract()) {
      auto it = std::find(space->abstract_atoms_.begin(), space->abstract_atoms_.end(), v.name);
      ax.axis_index = static_cast<std::size_t>(it - space->abstract_atoms_.begin());
      ax.is_abstract = true;
      ax.table = space->grid_.data();
      ax.stride = space->abstract_strides_[ax.axis_index];
      ax.modulus = space->grid_.size();
    } else {
      space->memberships_.push_back(program.context->set_of(v.name));
      std::size_t sort_idx = 0;
      while (space->sort_axes_[sort_idx].sort != *v.sort) ++sort_idx;
      ax.axis_index = sort_idx;
      ax.is_abstract = false;
      ax.table = space->memberships_.back().membership().data();
      ax.stride = space->sort_axes_[sort_idx].stride;
      ax.modulus = space->sort_axes_[sort_idx].domain->size();
    }
    space->atoms_.push_back(ax);
    space->atom_names_.push_back(v.name);
  }
  return space;
}

Interpretation InterpretationSpace::at(std::size_t idx) const {
  Interpretation out;
  out.sort_choice.reserve(sort_axes_.size());
  for (const auto& ax : sort_axes_) {
    out.sort_choice.push_back((idx / ax.stride) % ax.domain->size());
  }
  out.abstract_truth.reserve(abstract_atoms_.size());
  for (std::size_t i = 0; i < abstract_atoms_.size(); ++i) {
    out.abstract_truth.push_back(grid_[(idx / abstract_strides_[i]) % grid_.size()]);
  }
  return out;
}

std::size_t InterpretationSpace::index_of(const Interpretation& i) const {
  if (i.sort_choice.size() != sort_axes_.size() ||
      i.abstract_truth.size() != abstract_atoms_.size()) {
    throw Error("interpretation does not match this space");
  }
  std::size_t idx = 0;
  for (std::size_t a = 0; a < sort_axes_.size(); ++a) {
    if (i.sort_choice[a] >= sort_axes_[a].domain->size()) {
      throw Error("interpretation does not match this space");
    }
    idx += i.sort_choice[a] * sort_axes_[a].stride;
  }
  for (std::size_t a = 0; a < abstract_atoms_.size(); ++a) {
    auto it = std::find(grid_.begin(), grid_.end(), i.abstract_truth[a]);
    if (it == grid_.end()) throw Error("abstract truth value not on the grid");
    idx += static_cast<std::size_t>(it - grid_.begin()) * abstract_strides_[a];
  }
  return idx;
}

bool InterpretationSpace::has_atom(const std::string& atom) const {
  return std::find(atom_names_.begin(), atom_names_.end(), atom) != atom_names_.end();
}

std::size_t InterpretationSpace::atom_slot(const std::string& atom) const {
  auto it = std::find(atom_names_.begin(), atom_names_.end(), atom);
  if (it == atom_names_.end()) throw UnknownAtomError(atom);
  return static_cast<std::size_t>(it - atom_names_.begin());
}

Degree InterpretationSpace::truth(std::size_t idx, const std::string& atom) const {
  return truth_slot(idx, atom_slot(atom));
}

Degree InterpretationSpace::truth(const Interpretation& i, const std::string& atom) const {
  const AtomAxis& ax = atoms_[atom_slot(atom)];
  if (ax.is_abstract) return i.abstract_truth[ax.axis_index];
  return ax.table[i.sort_choice[ax.axis_index]];
}

bool PossibilityDistribution::normalized() const {
  for (const auto& v : values) {
    if (v == Degree::one()) return true;
  }
  return false;
}

std::vector<Degree> default_truth_grid(const Program& program) {
  std::set<Degree> values{Degree::zero(), Degree::one()};
  for (const auto& c : program.clauses) {
    values.insert(c.weight);
    values.insert(c.weight.complement());
  }
  std::vector<Degree> grid(values.begin(), values.end());
  return refine_grid(grid);
}

std::vector<Degree> refine_grid(const std::vector<Degree>& grid) {
  std::vector<Degree> out;
  out.reserve(grid.size() * 2);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out.push_back(grid[i]);
    if (i + 1 < grid.size()) {
      out.push_back(Degree((grid[i].value() + grid[i + 1].value()) / Rational(2)));
    }
  }
  return out;
}

std::vector<Interpretation> enumerate_interpretations(const Program& program,
                                                      const std::vector<Degree>& truth_grid,
                                                      std::size_t max_size) {
  auto space = InterpretationSpace::build(program, truth_grid, max_size);
  std::vector<Interpretation> out;
  out.reserve(space->size());
  for (std::size_t i = 0; i < space->size(); ++i) out.push_back(space->at(i));
  return out;
}

namespace {

Degree eval_equiv(const Degree& a, const Degree& b) {
  if (a == b) return Degree::one();
  return std::min(a, b);
}

Degree eval_neg(const Degree& a) {
  return a == Degree::zero() ? Degree::one() : Degree::zero();
}

template <typename TruthFn>
Degree eval_rec(const Formula& f, const TruthFn& truth) {
  switch (f.kind()) {
    case Formula::Kind::atom: return truth(f.atom_name());
    case Formula::Kind::zero: return Degree::zero();
    case Formula::Kind::conj:
      return std::min(eval_rec(*f.lhs(), truth), eval_rec(*f.rhs(), truth));
    case Formula::Kind::impl:
      return goedel_implies(eval_rec(*f.lhs(), truth), eval_rec(*f.rhs(), truth));
    case Formula::Kind::disj:
      return std::max(eval_rec(*f.lhs(), truth), eval_rec(*f.rhs(), truth));
    case Formula::Kind::neg: return eval_neg(eval_rec(*f.lhs(), truth));
    case Formula::Kind::equiv:
      return eval_equiv(eval_rec(*f.lhs(), truth), eval_rec(*f.rhs(), truth));
  }
  throw Error("corrupt formula");
}

}  // namespace

Degree eval_formula(const InterpretationSpace& space, std::size_t idx, const Formula& f) {
  return eval_rec(f, [&](const std::string& atom) { return space.truth(idx, atom); });
}

Degree eval_formula(const InterpretationSpace& space, const Interpretation& i, const Formula& f) {
  return eval_rec(f, [&](const std::string& atom) { return space.truth(i, atom); });
}

BoundFormula::BoundFormula(const InterpretationSpace& space, const Formula& f) {
  // Post-order flattening; evaluation replays it with a value stack.
  std::vector<const Formula*> stack{&f};
  std::vector<const Formula*> order;
  while (!stack.empty()) {
    const Formula* node = stack.back();
    stack.pop_back();
    order.push_back(node);
    if (node->lhs()) stack.push_back(node->lhs().get());
    if (node->rhs()) stack.push_back(node->rhs().get());
  }
  postorder_.reserve(order.size());
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    Node n;
    n.kind = (*it)->kind();
    if (n.kind == Formula::Kind::atom) n.slot = space.atom_slot((*it)->atom_name());
    postorder_.push_back(n);
  }
}

Degree BoundFormula::eval(const InterpretationSpace& space, std::size_t idx,
                          std::vector<Degree>& scratch) const {
  scratch.clear();
  for (const Node& n : postorder_) {
    switch (n.kind) {
      case Formula::Kind::atom:
        scratch.push_back(space.truth_slot(idx, n.slot));
        break;
      case Formula::Kind::zero:
        scratch.push_back(Degree::zero());
        break;
      case Formula::Kind::neg:
        scratch.back() = eval_neg(scratch.back());
        break;
      default: {
        Degree rhs = scratch.back();
        scratch.pop_back();
        Degree lhs = scratch.back();
        switch (n.kind) {
          case Formula::Kind::conj: scratch.back() = std::min(lhs, rhs); break;
          case Formula::Kind::impl: scratch.back() = goedel_implies(lhs, rhs); break;
          case Formula::Kind::disj: scratch.back() = std::max(lhs, rhs); break;
          case Formula::Kind::equiv: scratch.back() = eval_equiv(lhs, rhs); break;
          default: throw Error("corrupt formula");
        }
        break;
      }
    }
  }
  return scratch.back();
}

Degree necessity_of_formula(const Formula& f, const PossibilityDistribution& pi, Exec exec) {
  if (!pi.space || pi.values.size() != pi.space->size()) {
    throw Error("distribution does not cover its interpretation space");
  }
  const InterpretationSpace& space = *pi.space;
  const BoundFormula bound(space, f);
  const std::size_t n = space.size();

  if (exec == Exec::serial || n < kParallelGrain) {
    std::vector<Degree> scratch;
    Degree result = Degree::one();
    for (std::size_t i = 0; i < n; ++i) {
      result = std::min(result, reciprocal_implies(pi.values[i], bound.eval(space, i, scratch)));
    }
    return result;
  }

  Degree result = Degree::one();
#pragma omp parallel
  {
    std::vector<Degree> scratch;
    Degree local = Degree::one();
#pragma omp for nowait schedule(static)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
      local = std::min(local, reciprocal_implies(pi.values[static_cast<std::size_t>(i)],
                                                 bound.eval(space, static_cast<std::size_t>(i),
                                                            scratch)));
    }
#pragma omp critical
    result = std::min(result, local);
  }
  return result;
}

bool satisfies(const PossibilityDistribution& pi, const Clause& clause, Exec exec) {
  return necessity_of_formula(*clause_formula(clause), pi, exec) >= clause.weight;
}

}  // namespace pgl
