#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "pgl/ast.hpp"
#include "pgl/parallel.hpp"

namespace pgl {

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

// General Goedel-logic formula over atoms: conjunction, implication, the
// constant 0, and the derived connectives (disjunction, negation,
// equivalence). Only the evaluator and the oracles consume these; the
// engine works on Horn clauses directly.
class Formula {
 public:
  enum class Kind { atom, zero, conj, impl, disj, neg, equiv };

  static FormulaPtr atom(std::string name);
  static FormulaPtr zero();
  static FormulaPtr conj(FormulaPtr a, FormulaPtr b);
  static FormulaPtr impl(FormulaPtr a, FormulaPtr b);
  static FormulaPtr disj(FormulaPtr a, FormulaPtr b);
  static FormulaPtr neg(FormulaPtr a);
  static FormulaPtr equiv(FormulaPtr a, FormulaPtr b);

  Kind kind() const { return kind_; }
  const std::string& atom_name() const { return atom_; }
  const FormulaPtr& lhs() const { return lhs_; }
  const FormulaPtr& rhs() const { return rhs_; }

  std::string str() const;

 private:
  Formula(Kind kind, std::string atom, FormulaPtr lhs, FormulaPtr rhs)
      : kind_(kind), atom_(std::move(atom)), lhs_(std::move(lhs)), rhs_(std::move(rhs)) {}

  Kind kind_;
  std::string atom_;
  FormulaPtr lhs_, rhs_;
};

// body1 & ... & bodyk -> head as a Formula; a fact is just its head atom.
FormulaPtr clause_formula(const Clause& clause);

// Def 7 interpretation, restricted to one program's vocabulary: one chosen
// domain element per declared sort (shared by all atoms of that sort) and
// one truth degree per abstract atom.
struct Interpretation {
  std::vector<std::size_t> sort_choice;   // per sort axis: index into its domain
  std::vector<Degree> abstract_truth;     // per abstract atom axis

  friend bool operator==(const Interpretation& a, const Interpretation& b) = default;
};

// The finite set of interpretations of a program: the Cartesian product of
// every declared sort's domain with a truth grid per abstract atom.
// Interpretations are addressed by index in mixed-radix order (last axis
// varies fastest); nothing is materialized, so large spaces stay cheap to
// hold and cheap to scan in parallel.
class InterpretationSpace {
 public:
  // Throws SpaceCapError if the product exceeds max_size.
  static std::shared_ptr<const InterpretationSpace> build(const Program& program,
                                                          std::vector<Degree> truth_grid,
                                                          std::size_t max_size);

  std::size_t size() const { return size_; }
  const std::vector<Degree>& truth_grid() const { return grid_; }

  std::size_t sort_axis_count() const { return sort_axes_.size(); }
  const std::string& sort_axis_name(std::size_t i) const { return sort_axes_[i].sort; }
  const DomainPtr& sort_axis_domain(std::size_t i) const { return sort_axes_[i].domain; }
  std::size_t abstract_axis_count() const { return abstract_atoms_.size(); }
  const std::string& abstract_axis_atom(std::size_t i) const { return abstract_atoms_[i]; }

  Interpretation at(std::size_t idx) const;
  std::size_t index_of(const Interpretation& i) const;

  std::size_t atom_count() const { return atom_names_.size(); }
  const std::string& atom_name(std::size_t slot) const { return atom_names_[slot]; }

  // Truth value of an atom. The slot form is the hot path.
  bool has_atom(const std::string& atom) const;
  std::size_t atom_slot(const std::string& atom) const;  // throws UnknownAtomError
  Degree truth(std::size_t idx, const std::string& atom) const;
  Degree truth_slot(std::size_t idx, std::size_t slot) const {
    const AtomAxis& ax = atoms_[slot];
    return ax.table[(idx / ax.stride) % ax.modulus];
  }
  Degree truth(const Interpretation& i, const std::string& atom) const;

 private:
  struct SortAxis {
    std::string sort;
    DomainPtr domain;
    std::size_t stride;
  };
  struct AtomAxis {
    std::string name;
    const Degree* table;    // membership vector or truth grid
    std::size_t stride;
    std::size_t modulus;
    bool is_abstract;
    std::size_t axis_index;  // into sort_axes_ or abstract strides
  };

  std::vector<SortAxis> sort_axes_;
  std::vector<std::string> abstract_atoms_;
  std::vector<std::size_t> abstract_strides_;
  std::vector<Degree> grid_;
  std::vector<FuzzySet> memberships_;  // owns the tables AtomAxis points into
  std::vector<AtomAxis> atoms_;
  std::vector<std::string> atom_names_;  // parallel to atoms_
  std::size_t size_ = 1;
};

using SpacePtr = std::shared_ptr<const InterpretationSpace>;

// Dense possibility assignment over one space. Def 1 models are the
// normalized ones; non-normalized distributions arise as least-specific
// models of unsatisfiable programs and are flagged, not rejected.
struct PossibilityDistribution {
  SpacePtr space;
  std::vector<Degree> values;

  bool normalized() const;
};

// {0, 1} + all clause weights + their complements + midpoints between
// consecutive values. The midpoints realize the strict-inequality witnesses
// that pin down exact semantic degrees.
std::vector<Degree> default_truth_grid(const Program& program);

// Inserts the midpoint between each pair of consecutive grid values.
std::vector<Degree> refine_grid(const std::vector<Degree>& grid);

// Materializes the full space as Interpretation values (API / test use;
// kernels index the space directly). Throws SpaceCapError beyond max_size.
std::vector<Interpretation> enumerate_interpretations(const Program& program,
                                                      const std::vector<Degree>& truth_grid,
                                                      std::size_t max_size);

// Goedel evaluation per the section-2 truth rules.
Degree eval_formula(const InterpretationSpace& space, std::size_t idx, const Formula& f);
Degree eval_formula(const InterpretationSpace& space, const Interpretation& i, const Formula& f);

// N([f] | pi) = min over interpretations of pi(I) => I(f).
Degree necessity_of_formula(const Formula& f, const PossibilityDistribution& pi,
                            Exec exec = Exec::parallel);

// Def 2: pi satisfies (clause, weight) iff N([clause] | pi) >= weight.
bool satisfies(const PossibilityDistribution& pi, const Clause& clause,
               Exec exec = Exec::parallel);

// Flattened evaluation plan for one formula over one space; keeps the
// per-interpretation kernels allocation-free.
class BoundFormula {
 public:
  BoundFormula(const InterpretationSpace& space, const Formula& f);

  // scratch is caller-provided so each thread can reuse its own.
  Degree eval(const InterpretationSpace& space, std::size_t idx,
              std::vector<Degree>& scratch) const;

 private:
  struct Node {
    Formula::Kind kind;
    std::size_t slot = 0;  // atom slot for Kind::atom
  };
  std::vector<Node> postorder_;
};

}  // namespace pgl
