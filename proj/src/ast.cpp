#include "pgl/ast.hpp"

#include "pgl/errors.hpp"

namespace pgl {

const DomainPtr& Context::domain_of_sort(const std::string& sort) const {
  auto it = domains_.find(sort);
  if (it == domains_.end()) throw Error("undeclared sort '" + sort + "'");
  return it->second;
}

const FuzzySet& Context::set_of(const std::string& atom) const {
  auto it = interp_.find(atom);
  if (it == interp_.end()) throw UnknownAtomError(atom);
  return it->second;
}

void Context::add_domain(DomainPtr domain) {
  domains_.emplace(domain->name(), std::move(domain));
}

void Context::add_interp(std::string atom, FuzzySet set) {
  interp_.emplace(std::move(atom), std::move(set));
}

const VarDecl* Program::find_var(std::string_view name) const {
  for (const auto& v : vars) {
    if (v.name == name) return &v;
  }
  return nullptr;
}

std::vector<Atom> Program::atoms() const {
  std::vector<Atom> out;
  out.reserve(vars.size());
  for (const auto& v : vars) out.push_back(v.atom());
  return out;
}

void validate_program(Program& program) {
  program.context.reset();
  Context ctx;

  for (std::size_t i = 0; i < program.sorts.size(); ++i) {
    const auto& decl = program.sorts[i];
    for (std::size_t j = 0; j < i; ++j) {
      if (program.sorts[j].name == decl.name) {
        throw ParseError("duplicate sort '" + decl.name + "'", decl.loc.line, decl.loc.col);
      }
    }
    try {
      if (const auto* range = std::get_if<RangeSpec>(&decl.shape)) {
        ctx.add_domain(SortDomain::integer_range(decl.name, range->lo, range->hi, range->step));
      } else {
        ctx.add_domain(SortDomain::labels(decl.name, std::get<std::vector<std::string>>(decl.shape)));
      }
    } catch (const Error& e) {
      throw ParseError(e.what(), decl.loc.line, decl.loc.col);
    }
  }

  for (std::size_t i = 0; i < program.vars.size(); ++i) {
    const auto& decl = program.vars[i];
    for (std::size_t j = 0; j < i; ++j) {
      if (program.vars[j].name == decl.name) {
        throw ParseError("duplicate atom '" + decl.name + "'", decl.loc.line, decl.loc.col);
      }
    }
    if (decl.abstract()) continue;
    if (ctx.domains().find(*decl.sort) == ctx.domains().end()) {
      throw ParseError("undeclared sort '" + *decl.sort + "'", decl.loc.line, decl.loc.col);
    }
    if (!decl.init) {
      throw ParseError("sorted atom '" + decl.name + "' has no fuzzy interpretation",
                       decl.loc.line, decl.loc.col);
    }
    const DomainPtr& domain = ctx.domains().at(*decl.sort);
    try {
      if (const auto* trap = std::get_if<Trapezoid>(&*decl.init)) {
        ctx.add_interp(decl.name, trapezoid_to_fuzzy(*trap, domain));
      } else {
        const auto& set = std::get<FuzzySet>(*decl.init);
        if (!(*set.domain() == *domain)) {
          throw Error("fuzzy set of '" + decl.name + "' is over domain '" +
                      set.domain()->name() + "', expected '" + domain->name() + "'");
        }
        if (!set.normalized()) {
          throw Error("fuzzy set of '" + decl.name + "' must attain both 0 and 1");
        }
        ctx.add_interp(decl.name, set);
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(e.what(), decl.loc.line, decl.loc.col);
    }
  }

  auto require_atom = [&](const std::string& name, const SourceLoc& loc) {
    if (!program.find_var(name)) {
      throw ParseError("undeclared atom '" + name + "'", loc.line, loc.col);
    }
  };
  for (const auto& clause : program.clauses) {
    require_atom(clause.head, SourceLoc{});
    for (const auto& b : clause.body) require_atom(b, SourceLoc{});
  }
  for (const auto& q : program.queries) require_atom(q.goal, q.loc);

  if (!program.sorts.empty()) program.context = std::move(ctx);
}

}  // namespace pgl
