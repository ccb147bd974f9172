#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pgl/fuzzy.hpp"

namespace pgl {

struct SourceLoc {
  int line = 0;
  int col = 0;
};

// A propositional variable. Sorted atoms carry the name of their sort and
// get a fuzzy interpretation from the context; abstract atoms have neither.
struct Atom {
  std::string name;
  std::optional<std::string> sort;

  bool sorted() const { return sort.has_value(); }

  friend bool operator==(const Atom& a, const Atom& b) = default;
};

// Certainty-weighted Horn clause (p1 & ... & pk -> head, weight). An empty
// body makes it a fact. Body atoms are kept distinct.
struct Clause {
  std::vector<std::string> body;
  std::string head;
  Degree weight;

  bool fact() const { return body.empty(); }
  bool recursive() const {
    return std::find(body.begin(), body.end(), head) != body.end();
  }

  friend bool operator==(const Clause& a, const Clause& b) = default;
};

struct RangeSpec {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  std::int64_t step = 1;

  friend bool operator==(const RangeSpec& a, const RangeSpec& b) = default;
};

struct SortDecl {
  std::string name;
  std::variant<RangeSpec, std::vector<std::string>> shape;
  SourceLoc loc;

  friend bool operator==(const SortDecl& a, const SortDecl& b) {
    return a.name == b.name && a.shape == b.shape;
  }
};

// Declares one atom. A sorted declaration carries its fuzzy interpretation,
// either as trapezoid parameters (kept verbatim for round-tripping) or as an
// explicit membership map resolved against the sort's domain.
struct VarDecl {
  std::string name;
  std::optional<std::string> sort;
  std::optional<std::variant<Trapezoid, FuzzySet>> init;
  SourceLoc loc;

  bool abstract() const { return !sort.has_value(); }
  Atom atom() const { return Atom{name, sort}; }

  friend bool operator==(const VarDecl& a, const VarDecl& b) {
    return a.name == b.name && a.sort == b.sort && a.init == b.init;
  }
};

struct QueryDecl {
  std::string goal;
  SourceLoc loc;

  friend bool operator==(const QueryDecl& a, const QueryDecl& b) { return a.goal == b.goal; }
};

// Def 8 context: sort domains plus the normalized fuzzy interpretation of
// every sorted atom. Built during validation; not part of structural
// program equality.
class Context {
 public:
  const std::map<std::string, DomainPtr>& domains() const { return domains_; }
  const std::map<std::string, FuzzySet>& interp() const { return interp_; }

  const DomainPtr& domain_of_sort(const std::string& sort) const;
  const FuzzySet& set_of(const std::string& atom) const;  // throws UnknownAtomError
  bool interprets(const std::string& atom) const { return interp_.count(atom) > 0; }

  void add_domain(DomainPtr domain);
  void add_interp(std::string atom, FuzzySet set);

 private:
  std::map<std::string, DomainPtr> domains_;
  std::map<std::string, FuzzySet> interp_;
};

// A parsed and validated PGL program: declarations in source order plus the
// resolved context (present iff any sort is declared).
struct Program {
  std::vector<SortDecl> sorts;
  std::vector<VarDecl> vars;
  std::vector<Clause> clauses;
  std::vector<QueryDecl> queries;
  std::optional<Context> context;

  bool contextual() const { return context.has_value(); }
  const VarDecl* find_var(std::string_view name) const;
  std::vector<Atom> atoms() const;

  friend bool operator==(const Program& a, const Program& b) {
    return a.sorts == b.sorts && a.vars == b.vars && a.clauses == b.clauses &&
           a.queries == b.queries;
  }
};

// Builds Program::context and enforces the static invariants: declared
// sorts/atoms, distinct names, normalized interpretations, weights in range.
// Throws ParseError with the offending declaration's location.
void validate_program(Program& program);

}  // namespace pgl
