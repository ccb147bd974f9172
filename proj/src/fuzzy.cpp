#include "pgl/fuzzy.hpp"

#include <algorithm>
#include <stdexcept>

#include "pgl/errors.hpp"

namespace pgl {

namespace {

void require_same_domain(const FuzzySet& a, const FuzzySet& b) {
  if (a.domain() == b.domain()) return;
  if (*a.domain() == *b.domain()) return;
  throw DomainMismatchError("fuzzy sets over distinct domains '" + a.domain()->name() +
                            "' and '" + b.domain()->name() + "'");
}

}  // namespace

std::string element_str(const Element& e) {
  if (const auto* r = std::get_if<Rational>(&e)) return r->str();
  return std::get<std::string>(e);
}

std::shared_ptr<const SortDomain> SortDomain::integer_range(std::string name, std::int64_t lo,
                                                            std::int64_t hi, std::int64_t step) {
  if (step <= 0) throw Error("sort '" + name + "': step must be positive");
  if (lo > hi) throw Error("sort '" + name + "': empty range");
  auto d = std::make_shared<SortDomain>();
  d->name_ = std::move(name);
  d->numeric_ = true;
  for (std::int64_t v = lo; v <= hi; v += step) d->elements_.emplace_back(Rational(v));
  return d;
}

std::shared_ptr<const SortDomain> SortDomain::labels(std::string name,
                                                     std::vector<std::string> labels) {
  if (labels.empty()) throw Error("sort '" + name + "': empty domain");
  for (std::size_t i = 0; i < labels.size(); ++i) {
    for (std::size_t j = i + 1; j < labels.size(); ++j) {
      if (labels[i] == labels[j]) {
        throw Error("sort '" + name + "': duplicate element '" + labels[i] + "'");
      }
    }
  }
  auto d = std::make_shared<SortDomain>();
  d->name_ = std::move(name);
  d->numeric_ = false;
  for (auto& l : labels) d->elements_.emplace_back(std::move(l));
  return d;
}

std::optional<std::size_t> SortDomain::index_of(const Element& e) const {
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (elements_[i] == e) return i;
  }
  return std::nullopt;
}

bool operator==(const SortDomain& a, const SortDomain& b) {
  return a.name_ == b.name_ && a.numeric_ == b.numeric_ && a.elements_ == b.elements_;
}

Trapezoid::Trapezoid(Rational t1, Rational t2, Rational t3, Rational t4)
    : t1(t1), t2(t2), t3(t3), t4(t4) {
  if (!(t1 <= t2 && t2 <= t3 && t3 <= t4)) {
    throw std::invalid_argument("trapezoid " + str() + " breakpoints not ordered");
  }
}

Degree Trapezoid::membership(const Rational& u) const {
  if (t2 <= u && u <= t3) return Degree::one();
  if (t1 < u && u < t2) return Degree((u - t1) / (t2 - t1));
  if (t3 < u && u < t4) return Degree((t4 - u) / (t4 - t3));
  return Degree::zero();
}

std::string Trapezoid::str() const {
  return "[" + t1.str() + ";" + t2.str() + ";" + t3.str() + ";" + t4.str() + "]";
}

FuzzySet::FuzzySet(DomainPtr domain, std::vector<Degree> membership)
    : domain_(std::move(domain)), membership_(std::move(membership)) {
  if (!domain_) throw Error("fuzzy set without a domain");
  if (membership_.size() != domain_->size()) {
    throw Error("fuzzy set over '" + domain_->name() + "': membership not total (" +
                std::to_string(membership_.size()) + " of " + std::to_string(domain_->size()) +
                " points)");
  }
}

Degree FuzzySet::at(const Element& e) const {
  auto idx = domain_->index_of(e);
  if (!idx) {
    throw DomainMismatchError("element " + element_str(e) + " not in domain '" +
                              domain_->name() + "'");
  }
  return membership_[*idx];
}

bool FuzzySet::normalized() const {
  bool has_zero = false, has_one = false;
  for (const auto& d : membership_) {
    if (d == Degree::zero()) has_zero = true;
    if (d == Degree::one()) has_one = true;
  }
  return has_zero && has_one;
}

std::string FuzzySet::str() const {
  std::string out = "{";
  for (std::size_t i = 0; i < membership_.size(); ++i) {
    if (i > 0) out += ", ";
    out += element_str(domain_->element(i)) + ": " + membership_[i].str();
  }
  return out + "}";
}

bool operator==(const FuzzySet& a, const FuzzySet& b) {
  return (a.domain_ == b.domain_ || *a.domain_ == *b.domain_) && a.membership_ == b.membership_;
}

FuzzySet trapezoid_to_fuzzy(const Trapezoid& t, DomainPtr domain) {
  if (!domain->numeric()) {
    throw Error("trapezoid over symbolic domain '" + domain->name() + "'");
  }
  std::vector<Degree> membership;
  membership.reserve(domain->size());
  for (const auto& e : domain->elements()) {
    membership.push_back(t.membership(std::get<Rational>(e)));
  }
  FuzzySet set(std::move(domain), std::move(membership));
  if (!set.normalized()) {
    throw Error("trapezoid " + t.str() + " is not normalized on domain '" +
                set.domain()->name() + "' (must attain both 0 and 1)");
  }
  return set;
}

Degree necessity_of_match(const FuzzySet& b, const FuzzySet& a) {
  require_same_domain(b, a);
  Degree result = Degree::one();
  for (std::size_t i = 0; i < a.membership().size(); ++i) {
    result = std::min(result, reciprocal_implies(a.at(i), b.at(i)));
  }
  return result;
}

FuzzySet pointwise_min(const FuzzySet& f, const FuzzySet& g) {
  require_same_domain(f, g);
  std::vector<Degree> membership;
  membership.reserve(f.membership().size());
  for (std::size_t i = 0; i < f.membership().size(); ++i) {
    membership.push_back(std::min(f.at(i), g.at(i)));
  }
  return FuzzySet(f.domain(), std::move(membership));
}

FuzzySet raise_to(const FuzzySet& f, const Degree& floor) {
  std::vector<Degree> membership;
  membership.reserve(f.membership().size());
  for (const auto& d : f.membership()) membership.push_back(std::max(floor, d));
  return FuzzySet(f.domain(), std::move(membership));
}

bool dominates(const FuzzySet& f, const FuzzySet& g) {
  require_same_domain(f, g);
  for (std::size_t i = 0; i < f.membership().size(); ++i) {
    if (f.at(i) < g.at(i)) return false;
  }
  return true;
}

}  // namespace pgl
