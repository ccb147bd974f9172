#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pgl/degrees.hpp"

namespace pgl {

// A point of a sort domain: a rational for numeric sorts, a label otherwise.
using Element = std::variant<Rational, std::string>;

std::string element_str(const Element& e);

// Finite ordered domain of one sort (Def: every sort maps to a non-empty,
// pairwise-distinct list of points). Numeric domains come from integer
// ranges with a step; symbolic domains from label lists.
class SortDomain {
 public:
  static std::shared_ptr<const SortDomain> integer_range(std::string name, std::int64_t lo,
                                                         std::int64_t hi, std::int64_t step = 1);
  static std::shared_ptr<const SortDomain> labels(std::string name,
                                                  std::vector<std::string> labels);

  const std::string& name() const { return name_; }
  std::size_t size() const { return elements_.size(); }
  const Element& element(std::size_t i) const { return elements_[i]; }
  const std::vector<Element>& elements() const { return elements_; }
  std::optional<std::size_t> index_of(const Element& e) const;
  bool numeric() const { return numeric_; }

  friend bool operator==(const SortDomain& a, const SortDomain& b);

 private:
  std::string name_;
  std::vector<Element> elements_;
  bool numeric_ = false;
};

using DomainPtr = std::shared_ptr<const SortDomain>;

// Trapezoidal membership shape [t1; t2; t3; t4]: support (t1, t4) open,
// core [t2, t3] closed, linear edges in between. A vertical edge (t1 = t2 or
// t3 = t4) keeps membership 1 at the core endpoint.
struct Trapezoid {
  Trapezoid(Rational t1, Rational t2, Rational t3, Rational t4);

  Degree membership(const Rational& u) const;
  std::string str() const;  // "[t1;t2;t3;t4]"

  friend bool operator==(const Trapezoid& a, const Trapezoid& b) = default;

  Rational t1, t2, t3, t4;
};

// Discrete fuzzy set: a total membership map over one sort domain. Transient
// results (pointwise minima, clipped sets) need not be normalized; sets used
// as variable interpretations in a context must be.
class FuzzySet {
 public:
  FuzzySet(DomainPtr domain, std::vector<Degree> membership);

  const DomainPtr& domain() const { return domain_; }
  const std::vector<Degree>& membership() const { return membership_; }
  const Degree& at(std::size_t i) const { return membership_[i]; }
  Degree at(const Element& e) const;  // throws DomainMismatchError if e is not a domain point

  // Attains both 0 and 1 somewhere on the domain.
  bool normalized() const;

  std::string str() const;  // "{element: degree, ...}"

  friend bool operator==(const FuzzySet& a, const FuzzySet& b);

 private:
  DomainPtr domain_;
  std::vector<Degree> membership_;
};

// Samples a trapezoid at every point of a numeric domain. Throws Error if the
// resulting set is not normalized on that grid (Def 8 requires variable
// interpretations to attain both 0 and 1).
FuzzySet trapezoid_to_fuzzy(const Trapezoid& t, DomainPtr domain);

// Necessity of matching b from a: min over the domain of
// reciprocal_implies(mu_a(u), mu_b(u)). Both sets must share a domain.
Degree necessity_of_match(const FuzzySet& b, const FuzzySet& a);

// Pointwise minimum; result may be non-normalized.
FuzzySet pointwise_min(const FuzzySet& f, const FuzzySet& g);

// u -> max(floor, mu_f(u)); the comparison operand of the UN rule.
FuzzySet raise_to(const FuzzySet& f, const Degree& floor);

// True iff mu_f >= mu_g pointwise.
bool dominates(const FuzzySet& f, const FuzzySet& g);

}  // namespace pgl
