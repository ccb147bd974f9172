#include "pgl/parser.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "pgl/errors.hpp"

namespace pgl {

namespace {

enum class TokKind {
  ident,
  number,
  equals,
  lbrace,
  rbrace,
  lparen,
  rparen,
  comma,
  colon,
  amp,
  arrow,
  dotdot,
  end
};

struct Token {
  TokKind kind;
  std::string text;
  int line;
  int col;
};

const char* tok_name(TokKind k) {
  switch (k) {
    case TokKind::ident: return "identifier";
    case TokKind::number: return "number";
    case TokKind::equals: return "'='";
    case TokKind::lbrace: return "'{'";
    case TokKind::rbrace: return "'}'";
    case TokKind::lparen: return "'('";
    case TokKind::rparen: return "')'";
    case TokKind::comma: return "','";
    case TokKind::colon: return "':'";
    case TokKind::amp: return "'&'";
    case TokKind::arrow: return "'->'";
    case TokKind::dotdot: return "'..'";
    case TokKind::end: return "end of input";
  }
  return "?";
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_space();
    int line = line_, col = col_;
    if (pos_ >= text_.size()) return {TokKind::end, "", line, col};
    char c = text_[pos_];
    if (ident_start(c)) {
      std::size_t start = pos_;
      advance();
      while (pos_ < text_.size()) {
        char d = text_[pos_];
        if (ident_char(d)) {
          advance();
        } else if (d == '.' && pos_ + 1 < text_.size() && ident_char(text_[pos_ + 1])) {
          advance();  // dotted identifiers: peter.is.about_35
          advance();
        } else {
          break;
        }
      }
      return {TokKind::ident, std::string(text_.substr(start, pos_ - start)), line, col};
    }
    if (digit(c) || (c == '-' && pos_ + 1 < text_.size() && digit(text_[pos_ + 1]))) {
      return lex_number(line, col);
    }
    advance();
    switch (c) {
      case '=': return {TokKind::equals, "=", line, col};
      case '{': return {TokKind::lbrace, "{", line, col};
      case '}': return {TokKind::rbrace, "}", line, col};
      case '(': return {TokKind::lparen, "(", line, col};
      case ')': return {TokKind::rparen, ")", line, col};
      case ',': return {TokKind::comma, ",", line, col};
      case ':': return {TokKind::colon, ":", line, col};
      case '&': return {TokKind::amp, "&", line, col};
      case '-':
        if (pos_ < text_.size() && text_[pos_] == '>') {
          advance();
          return {TokKind::arrow, "->", line, col};
        }
        throw ParseError("stray '-'", line, col);
      case '.':
        if (pos_ < text_.size() && text_[pos_] == '.') {
          advance();
          return {TokKind::dotdot, "..", line, col};
        }
        throw ParseError("stray '.'", line, col);
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  Token lex_number(int line, int col) {
    std::size_t start = pos_;
    if (text_[pos_] == '-') advance();
    while (pos_ < text_.size() && digit(text_[pos_])) advance();
    // "0..120" keeps the dots for the range token; "0.5" takes the decimal.
    if (pos_ + 1 < text_.size() && text_[pos_] == '.' && digit(text_[pos_ + 1])) {
      advance();
      while (pos_ < text_.size() && digit(text_[pos_])) advance();
    } else if (pos_ + 1 < text_.size() && text_[pos_] == '/' && digit(text_[pos_ + 1])) {
      advance();
      while (pos_ < text_.size() && digit(text_[pos_])) advance();
    }
    return {TokKind::number, std::string(text_.substr(start, pos_ - start)), line, col};
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : lexer_(text) { shift(); }

  Program parse() {
    Program program;
    while (tok_.kind != TokKind::end) {
      if (tok_.kind != TokKind::ident) {
        throw ParseError(std::string("expected a statement, got ") + tok_name(tok_.kind),
                         tok_.line, tok_.col);
      }
      if (tok_.text == "sort") {
        parse_sort(program);
      } else if (tok_.text == "var") {
        parse_var(program);
      } else if (tok_.text == "clause") {
        parse_clause(program);
      } else if (tok_.text == "query") {
        parse_query(program);
      } else {
        throw ParseError("expected 'sort', 'var', 'clause' or 'query', got '" + tok_.text + "'",
                         tok_.line, tok_.col);
      }
    }
    validate_program(program);
    return program;
  }

 private:
  void shift() { tok_ = lexer_.next(); }

  Token expect(TokKind kind) {
    if (tok_.kind != kind) {
      throw ParseError(std::string("expected ") + tok_name(kind) + ", got " +
                           (tok_.kind == TokKind::end ? "end of input" : "'" + tok_.text + "'"),
                       tok_.line, tok_.col);
    }
    Token t = tok_;
    shift();
    return t;
  }

  Token expect_name() {
    Token t = expect(TokKind::ident);
    if (t.text == "sort" || t.text == "var" || t.text == "clause" || t.text == "query") {
      throw ParseError("'" + t.text + "' is a keyword", t.line, t.col);
    }
    return t;
  }

  Rational number(const Token& t) {
    try {
      return Rational::parse(t.text);
    } catch (const std::exception& e) {
      throw ParseError(e.what(), t.line, t.col);
    }
  }

  std::int64_t integer(const Token& t) {
    Rational r = number(t);
    if (!r.is_integer()) throw ParseError("expected an integer, got " + t.text, t.line, t.col);
    return r.num();
  }

  Degree degree(const Token& t) {
    try {
      return Degree::parse(t.text);
    } catch (const std::exception& e) {
      throw ParseError(e.what(), t.line, t.col);
    }
  }

  void parse_sort(Program& program) {
    Token kw = tok_;
    shift();
    Token name = expect_name();
    expect(TokKind::equals);
    SortDecl decl;
    decl.name = name.text;
    decl.loc = {kw.line, kw.col};
    if (tok_.kind == TokKind::lbrace) {
      shift();
      std::vector<std::string> labels;
      labels.push_back(expect_name().text);
      while (tok_.kind == TokKind::comma) {
        shift();
        labels.push_back(expect_name().text);
      }
      expect(TokKind::rbrace);
      decl.shape = std::move(labels);
    } else {
      RangeSpec range;
      range.lo = integer(expect(TokKind::number));
      expect(TokKind::dotdot);
      range.hi = integer(expect(TokKind::number));
      if (tok_.kind == TokKind::ident && tok_.text == "step") {
        shift();
        range.step = integer(expect(TokKind::number));
      }
      decl.shape = range;
    }
    program.sorts.push_back(std::move(decl));
    build_domain(program.sorts.back());
  }

  void build_domain(const SortDecl& decl) {
    if (domains_.count(decl.name)) {
      throw ParseError("duplicate sort '" + decl.name + "'", decl.loc.line, decl.loc.col);
    }
    try {
      if (const auto* range = std::get_if<RangeSpec>(&decl.shape)) {
        domains_[decl.name] = SortDomain::integer_range(decl.name, range->lo, range->hi, range->step);
      } else {
        domains_[decl.name] =
            SortDomain::labels(decl.name, std::get<std::vector<std::string>>(decl.shape));
      }
    } catch (const Error& e) {
      throw ParseError(e.what(), decl.loc.line, decl.loc.col);
    }
  }

  void parse_var(Program& program) {
    Token kw = tok_;
    shift();
    Token name = expect_name();
    VarDecl decl;
    decl.name = name.text;
    decl.loc = {kw.line, kw.col};
    if (declared_.count(decl.name)) {
      throw ParseError("duplicate atom '" + decl.name + "'", name.line, name.col);
    }
    if (tok_.kind == TokKind::colon) {
      shift();
      Token sort = expect_name();
      auto dom = domains_.find(sort.text);
      if (dom == domains_.end()) {
        throw ParseError("undeclared sort '" + sort.text + "'", sort.line, sort.col);
      }
      decl.sort = sort.text;
      expect(TokKind::equals);
      decl.init = parse_fuzzy_init(dom->second);
    }
    declared_.insert(decl.name);
    program.vars.push_back(std::move(decl));
  }

  std::variant<Trapezoid, FuzzySet> parse_fuzzy_init(const DomainPtr& domain) {
    if (tok_.kind == TokKind::ident && tok_.text == "trapezoid") {
      Token kw = tok_;
      shift();
      expect(TokKind::lparen);
      Rational t1 = number(expect(TokKind::number));
      expect(TokKind::comma);
      Rational t2 = number(expect(TokKind::number));
      expect(TokKind::comma);
      Rational t3 = number(expect(TokKind::number));
      expect(TokKind::comma);
      Rational t4 = number(expect(TokKind::number));
      expect(TokKind::rparen);
      try {
        return Trapezoid(t1, t2, t3, t4);
      } catch (const std::exception& e) {
        throw ParseError(e.what(), kw.line, kw.col);
      }
    }
    Token open = expect(TokKind::lbrace);
    std::vector<Degree> membership(domain->size(), Degree::zero());
    std::vector<bool> seen(domain->size(), false);
    while (true) {
      Element elem;
      Token et = tok_;
      if (tok_.kind == TokKind::number) {
        elem = number(tok_);
        shift();
      } else {
        elem = expect_name().text;
      }
      auto idx = domain->index_of(elem);
      if (!idx) {
        throw ParseError("element " + element_str(elem) + " not in domain of sort '" +
                             domain->name() + "'",
                         et.line, et.col);
      }
      if (seen[*idx]) {
        throw ParseError("duplicate element " + element_str(elem), et.line, et.col);
      }
      seen[*idx] = true;
      expect(TokKind::colon);
      membership[*idx] = degree(expect(TokKind::number));
      if (tok_.kind != TokKind::comma) break;
      shift();
    }
    expect(TokKind::rbrace);
    (void)open;
    return FuzzySet(domain, std::move(membership));
  }

  void parse_clause(Program& program) {
    shift();
    expect(TokKind::lparen);
    std::vector<Token> atoms;
    atoms.push_back(expect_name());
    while (tok_.kind == TokKind::amp) {
      shift();
      atoms.push_back(expect_name());
    }
    Clause clause;
    if (tok_.kind == TokKind::arrow) {
      shift();
      Token head = expect_name();
      check_declared(head);
      clause.head = head.text;
      for (const auto& a : atoms) {
        check_declared(a);
        if (std::find(clause.body.begin(), clause.body.end(), a.text) == clause.body.end()) {
          clause.body.push_back(a.text);  // duplicates collapse; min is idempotent
        }
      }
    } else {
      if (atoms.size() != 1) {
        throw ParseError("expected '->' after a conjunction", tok_.line, tok_.col);
      }
      check_declared(atoms[0]);
      clause.head = atoms[0].text;
    }
    expect(TokKind::comma);
    clause.weight = degree(expect(TokKind::number));
    expect(TokKind::rparen);
    program.clauses.push_back(std::move(clause));
  }

  void parse_query(Program& program) {
    Token kw = tok_;
    shift();
    Token goal = expect_name();
    check_declared(goal);
    program.queries.push_back(QueryDecl{goal.text, {kw.line, kw.col}});
  }

  void check_declared(const Token& atom) const {
    if (!declared_.count(atom.text)) {
      throw ParseError("undeclared atom '" + atom.text + "'", atom.line, atom.col);
    }
  }

  Lexer lexer_;
  Token tok_{TokKind::end, "", 0, 0};
  std::map<std::string, DomainPtr> domains_;
  std::set<std::string> declared_;
};

}  // namespace

Program parse_program(std::string_view text) { return Parser(text).parse(); }

Program parse_program_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_program(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ":" + e.what(), 0, 0);
  }
}

std::string format_program(const Program& program) {
  std::ostringstream out;
  for (const auto& s : program.sorts) {
    out << "sort " << s.name << " = ";
    if (const auto* range = std::get_if<RangeSpec>(&s.shape)) {
      out << range->lo << ".." << range->hi;
      if (range->step != 1) out << " step " << range->step;
    } else {
      const auto& labels = std::get<std::vector<std::string>>(s.shape);
      out << "{";
      for (std::size_t i = 0; i < labels.size(); ++i) {
        if (i > 0) out << ", ";
        out << labels[i];
      }
      out << "}";
    }
    out << "\n";
  }
  for (const auto& v : program.vars) {
    out << "var " << v.name;
    if (v.sort) {
      out << " : " << *v.sort << " = ";
      if (const auto* trap = std::get_if<Trapezoid>(&*v.init)) {
        out << "trapezoid(" << trap->t1 << ", " << trap->t2 << ", " << trap->t3 << ", "
            << trap->t4 << ")";
      } else {
        const auto& set = std::get<FuzzySet>(*v.init);
        out << "{";
        bool first = true;
        for (std::size_t i = 0; i < set.domain()->size(); ++i) {
          if (set.at(i) == Degree::zero()) continue;
          if (!first) out << ", ";
          first = false;
          out << element_str(set.domain()->element(i)) << ": " << set.at(i);
        }
        out << "}";
      }
    }
    out << "\n";
  }
  for (const auto& c : program.clauses) {
    out << "clause (";
    for (std::size_t i = 0; i < c.body.size(); ++i) {
      if (i > 0) out << " & ";
      out << c.body[i];
    }
    if (!c.body.empty()) out << " -> ";
    out << c.head << ", " << c.weight << ")\n";
  }
  for (const auto& q : program.queries) out << "query " << q.goal << "\n";
  return out.str();
}

}  // namespace pgl
