#include "gem/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "gem/errors.hpp"

namespace gem {

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)); }
bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool is_keyword(std::string_view s) {
  static constexpr std::string_view kWords[] = {"forall", "exists", "not", "and", "or",
                                                "in",     "sub",    "eq",  "F",   "P",
                                                "PP",     "O",      "I",   "U"};
  return std::find(std::begin(kWords), std::end(kWords), s) != std::end(kWords);
}

void check_var(std::string_view name, Sort expected) {
  if (sort_of(name) != expected) {
    throw SyntaxError(SyntaxError::Kind::kSort, 0, 0,
                      std::string(expected == Sort::kIndividual ? "individual" : "plural") +
                          " variable expected, got '" + std::string(name) + "'");
  }
  if (is_keyword(name)) {
    throw SyntaxError(SyntaxError::Kind::kSyntax, 0, 0,
                      "'" + std::string(name) + "' is reserved");
  }
}

}  // namespace

Sort sort_of(std::string_view name) {
  if (name.empty() || !is_ident_start(name.front()) ||
      !std::all_of(name.begin(), name.end(), is_ident_char)) {
    throw SyntaxError(SyntaxError::Kind::kSyntax, 0, 0,
                      "bad variable name '" + std::string(name) + "'");
  }
  return std::islower(static_cast<unsigned char>(name.front())) ? Sort::kIndividual
                                                                 : Sort::kPlural;
}

// --- Term ------------------------------------------------------------------

struct Term::Node {
  Kind kind;
  std::string name;
  std::vector<Term> args;
};

Term Term::var(std::string name) {
  check_var(name, Sort::kPlural);
  return Term(std::make_shared<const Node>(Node{Kind::kVar, std::move(name), {}}));
}
Term Term::singleton(std::string individual) {
  check_var(individual, Sort::kIndividual);
  return Term(std::make_shared<const Node>(Node{Kind::kSingleton, std::move(individual), {}}));
}
Term Term::unite(Term a, Term b) {
  return Term(std::make_shared<const Node>(Node{Kind::kUnion, {}, {std::move(a), std::move(b)}}));
}
Term Term::intersect(Term a, Term b) {
  return Term(
      std::make_shared<const Node>(Node{Kind::kIntersection, {}, {std::move(a), std::move(b)}}));
}
Term Term::components(Term a) {
  return Term(std::make_shared<const Node>(Node{Kind::kComponents, {}, {std::move(a)}}));
}

Term::Kind Term::kind() const { return node_->kind; }
const std::string& Term::name() const { return node_->name; }
const Term& Term::lhs() const { return node_->args.at(0); }
const Term& Term::rhs() const { return node_->args.at(1); }

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  return a.node_->kind == b.node_->kind && a.node_->name == b.node_->name &&
         a.node_->args == b.node_->args;
}

// --- Formula ---------------------------------------------------------------

struct Formula::Node {
  Kind kind;
  std::vector<std::string> vars;
  std::vector<Term> terms;
  std::vector<Formula> children;
  Bound bound = Bound::kNone;
};

Formula Formula::equal(std::string x, std::string y) {
  check_var(x, Sort::kIndividual);
  check_var(y, Sort::kIndividual);
  return Formula(std::make_shared<const Node>(
      Node{Kind::kEqual, {std::move(x), std::move(y)}, {}, {}, Bound::kNone}));
}
Formula Formula::member(std::string x, Term t) {
  check_var(x, Sort::kIndividual);
  return Formula(std::make_shared<const Node>(
      Node{Kind::kMember, {std::move(x)}, {std::move(t)}, {}, Bound::kNone}));
}
Formula Formula::sub(Term a, Term b) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::kSub, {}, {std::move(a), std::move(b)}, {}, Bound::kNone}));
}
Formula Formula::plural_eq(Term a, Term b) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::kPluralEq, {}, {std::move(a), std::move(b)}, {}, Bound::kNone}));
}
Formula Formula::fusion(Term t, std::string x) {
  check_var(x, Sort::kIndividual);
  return Formula(std::make_shared<const Node>(
      Node{Kind::kFusion, {std::move(x)}, {std::move(t)}, {}, Bound::kNone}));
}

Formula Formula::part(std::string x, std::string y) {
  check_var(x, Sort::kIndividual);
  check_var(y, Sort::kIndividual);
  return Formula(std::make_shared<const Node>(
      Node{Kind::kPart, {std::move(x), std::move(y)}, {}, {}, Bound::kNone}));
}
Formula Formula::proper_part(std::string x, std::string y) {
  check_var(x, Sort::kIndividual);
  check_var(y, Sort::kIndividual);
  return Formula(std::make_shared<const Node>(
      Node{Kind::kProperPart, {std::move(x), std::move(y)}, {}, {}, Bound::kNone}));
}
Formula Formula::overlap(std::string x, std::string y) {
  check_var(x, Sort::kIndividual);
  check_var(y, Sort::kIndividual);
  return Formula(std::make_shared<const Node>(
      Node{Kind::kOverlap, {std::move(x), std::move(y)}, {}, {}, Bound::kNone}));
}
Formula Formula::negate(Formula f) {
  return Formula(
      std::make_shared<const Node>(Node{Kind::kNot, {}, {}, {std::move(f)}, Bound::kNone}));
}
Formula Formula::conj(Formula a, Formula b) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::kAnd, {}, {}, {std::move(a), std::move(b)}, Bound::kNone}));
}
Formula Formula::disj(Formula a, Formula b) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::kOr, {}, {}, {std::move(a), std::move(b)}, Bound::kNone}));
}
Formula Formula::implies(Formula a, Formula b) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::kImplies, {}, {}, {std::move(a), std::move(b)}, Bound::kNone}));
}
Formula Formula::iff(Formula a, Formula b) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::kIff, {}, {}, {std::move(a), std::move(b)}, Bound::kNone}));
}

Formula Formula::forall(std::string var, Formula body) {
  check_var(var, sort_of(var));
  return Formula(std::make_shared<const Node>(
      Node{Kind::kForall, {std::move(var)}, {}, {std::move(body)}, Bound::kNone}));
}
Formula Formula::exists(std::string var, Formula body) {
  check_var(var, sort_of(var));
  return Formula(std::make_shared<const Node>(
      Node{Kind::kExists, {std::move(var)}, {}, {std::move(body)}, Bound::kNone}));
}

namespace {

void check_bound(const std::string& var, Formula::Bound bound) {
  const Sort s = sort_of(var);
  if (bound == Formula::Bound::kIn && s != Sort::kIndividual) {
    throw SyntaxError(SyntaxError::Kind::kSort, 0, 0,
                      "'in' bound needs an individual variable, got '" + var + "'");
  }
  if (bound == Formula::Bound::kSub && s != Sort::kPlural) {
    throw SyntaxError(SyntaxError::Kind::kSort, 0, 0,
                      "'sub' bound needs a plural variable, got '" + var + "'");
  }
}

}  // namespace

Formula Formula::forall(std::string var, Bound bound, Term range, Formula body) {
  if (bound == Bound::kNone) return forall(std::move(var), std::move(body));
  check_var(var, sort_of(var));
  check_bound(var, bound);
  return Formula(std::make_shared<const Node>(
      Node{Kind::kForall, {std::move(var)}, {std::move(range)}, {std::move(body)}, bound}));
}
Formula Formula::exists(std::string var, Bound bound, Term range, Formula body) {
  if (bound == Bound::kNone) return exists(std::move(var), std::move(body));
  check_var(var, sort_of(var));
  check_bound(var, bound);
  return Formula(std::make_shared<const Node>(
      Node{Kind::kExists, {std::move(var)}, {std::move(range)}, {std::move(body)}, bound}));
}

Formula::Kind Formula::kind() const { return node_->kind; }
const std::vector<std::string>& Formula::vars() const { return node_->vars; }
const std::vector<Term>& Formula::terms() const { return node_->terms; }
const std::vector<Formula>& Formula::children() const { return node_->children; }
Formula::Bound Formula::bound() const { return node_->bound; }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  return x.kind == y.kind && x.bound == y.bound && x.vars == y.vars && x.terms == y.terms &&
         x.children == y.children;
}

Formula conj_all(const std::vector<Formula>& fs) {
  if (fs.empty()) throw std::invalid_argument("conj_all of an empty list");
  Formula out = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) out = Formula::conj(out, fs[i]);
  return out;
}

// --- free variables / desugaring ------------------------------------------

namespace {

void collect(const Term& t, std::vector<std::string>& bound, std::vector<std::string>& out) {
  switch (t.kind()) {
    case Term::Kind::kVar:
    case Term::Kind::kSingleton:
      if (std::find(bound.begin(), bound.end(), t.name()) == bound.end() &&
          std::find(out.begin(), out.end(), t.name()) == out.end()) {
        out.push_back(t.name());
      }
      return;
    case Term::Kind::kUnion:
    case Term::Kind::kIntersection:
      collect(t.lhs(), bound, out);
      collect(t.rhs(), bound, out);
      return;
    case Term::Kind::kComponents:
      collect(t.operand(), bound, out);
      return;
  }
}

void collect(const Formula& f, std::vector<std::string>& bound, std::vector<std::string>& out) {
  auto note = [&](const std::string& v) {
    if (std::find(bound.begin(), bound.end(), v) == bound.end() &&
        std::find(out.begin(), out.end(), v) == out.end()) {
      out.push_back(v);
    }
  };
  if (f.is_quantifier()) {
    if (f.bound() != Formula::Bound::kNone) collect(f.range(), bound, out);
    bound.push_back(f.var());
    collect(f.body(), bound, out);
    bound.pop_back();
    return;
  }
  for (const auto& v : f.vars()) note(v);
  for (const auto& t : f.terms()) collect(t, bound, out);
  for (const auto& c : f.children()) collect(c, bound, out);
}

}  // namespace

std::vector<std::string> free_variables(const Formula& f) {
  std::vector<std::string> bound, out;
  collect(f, bound, out);
  return out;
}

std::vector<std::string> free_variables(const Term& t) {
  std::vector<std::string> bound, out;
  collect(t, bound, out);
  return out;
}

namespace {

void all_names(const Term& t, std::set<std::string>& out) {
  switch (t.kind()) {
    case Term::Kind::kVar:
    case Term::Kind::kSingleton: out.insert(t.name()); return;
    case Term::Kind::kUnion:
    case Term::Kind::kIntersection:
      all_names(t.lhs(), out);
      all_names(t.rhs(), out);
      return;
    case Term::Kind::kComponents: all_names(t.operand(), out); return;
  }
}

void all_names(const Formula& f, std::set<std::string>& out) {
  if (f.is_quantifier()) out.insert(f.var());
  for (const auto& v : f.vars()) out.insert(v);
  for (const auto& t : f.terms()) all_names(t, out);
  for (const auto& c : f.children()) all_names(c, out);
}

Term rename(const Term& t, const std::string& from, const std::string& to) {
  switch (t.kind()) {
    case Term::Kind::kVar: return t.name() == from ? Term::var(to) : t;
    case Term::Kind::kSingleton: return t.name() == from ? Term::singleton(to) : t;
    case Term::Kind::kUnion: return Term::unite(rename(t.lhs(), from, to), rename(t.rhs(), from, to));
    case Term::Kind::kIntersection:
      return Term::intersect(rename(t.lhs(), from, to), rename(t.rhs(), from, to));
    case Term::Kind::kComponents: return Term::components(rename(t.operand(), from, to));
  }
  return t;
}

// Renames free occurrences of `from`; `to` must not occur in f at all.
Formula rename(const Formula& f, const std::string& from, const std::string& to) {
  using K = Formula::Kind;
  auto v = [&](std::size_t i) { return f.vars()[i] == from ? to : f.vars()[i]; };
  auto t = [&](std::size_t i) { return rename(f.terms()[i], from, to); };
  auto c = [&](const Formula& g) { return rename(g, from, to); };
  switch (f.kind()) {
    case K::kEqual: return Formula::equal(v(0), v(1));
    case K::kMember: return Formula::member(v(0), t(0));
    case K::kSub: return Formula::sub(t(0), t(1));
    case K::kPluralEq: return Formula::plural_eq(t(0), t(1));
    case K::kFusion: return Formula::fusion(t(0), v(0));
    case K::kPart: return Formula::part(v(0), v(1));
    case K::kProperPart: return Formula::proper_part(v(0), v(1));
    case K::kOverlap: return Formula::overlap(v(0), v(1));
    case K::kNot: return Formula::negate(c(f.body()));
    case K::kAnd: return Formula::conj(c(f.lhs()), c(f.rhs()));
    case K::kOr: return Formula::disj(c(f.lhs()), c(f.rhs()));
    case K::kImplies: return Formula::implies(c(f.lhs()), c(f.rhs()));
    case K::kIff: return Formula::iff(c(f.lhs()), c(f.rhs()));
    case K::kForall:
    case K::kExists: {
      const bool all = f.kind() == K::kForall;
      Formula body = f.var() == from ? f.body() : c(f.body());
      if (f.bound() == Formula::Bound::kNone) {
        return all ? Formula::forall(f.var(), body) : Formula::exists(f.var(), body);
      }
      return all ? Formula::forall(f.var(), f.bound(), t(0), body)
                 : Formula::exists(f.var(), f.bound(), t(0), body);
    }
  }
  return f;
}

}  // namespace

Formula desugar(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::kNot:
      return Formula::negate(desugar(f.body()));
    case K::kAnd:
      return Formula::conj(desugar(f.lhs()), desugar(f.rhs()));
    case K::kOr:
      return Formula::disj(desugar(f.lhs()), desugar(f.rhs()));
    case K::kImplies:
      return Formula::implies(desugar(f.lhs()), desugar(f.rhs()));
    case K::kIff:
      return Formula::iff(desugar(f.lhs()), desugar(f.rhs()));
    case K::kForall:
    case K::kExists: {
      Formula body = desugar(f.body());
      std::string var = f.var();
      if (f.bound() != Formula::Bound::kNone) {
        // The range is read outside the binder, so a range that mentions the
        // bound name needs the binder renamed apart first.
        const auto range_vars = free_variables(f.range());
        if (std::find(range_vars.begin(), range_vars.end(), var) != range_vars.end()) {
          std::set<std::string> taken;
          all_names(body, taken);
          all_names(f.range(), taken);
          std::string fresh;
          for (int i = 1; taken.count(fresh = var + "_" + std::to_string(i)); ++i) {
          }
          body = rename(body, var, fresh);
          var = fresh;
        }
        Formula guard = f.bound() == Formula::Bound::kIn
                            ? Formula::member(var, f.range())
                            : Formula::sub(Term::var(var), f.range());
        body = f.kind() == K::kForall ? Formula::implies(guard, body) : Formula::conj(guard, body);
      }
      return f.kind() == K::kForall ? Formula::forall(var, body) : Formula::exists(var, body);
    }
    default:
      return f;
  }
}

// --- lexer -----------------------------------------------------------------

namespace {

enum class Tok { kIdent, kLParen, kRParen, kComma, kDot, kEq, kPlus, kAmp, kArrow, kIffArrow, kEnd };

struct Token {
  Tok tok;
  std::string text;
  std::size_t line;
  std::size_t column;
};

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t k) {
    for (std::size_t j = 0; j < k; ++j) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    const std::size_t l = line, cl = col;
    if (is_ident_start(c)) {
      std::size_t j = i;
      while (j < text.size() && is_ident_char(text[j])) ++j;
      out.push_back({Tok::kIdent, std::string(text.substr(i, j - i)), l, cl});
      advance(j - i);
      continue;
    }
    if (text.substr(i, 3) == "<->") {
      out.push_back({Tok::kIffArrow, "<->", l, cl});
      advance(3);
      continue;
    }
    if (text.substr(i, 2) == "->") {
      out.push_back({Tok::kArrow, "->", l, cl});
      advance(2);
      continue;
    }
    Tok t;
    switch (c) {
      case '(': t = Tok::kLParen; break;
      case ')': t = Tok::kRParen; break;
      case ',': t = Tok::kComma; break;
      case '.': t = Tok::kDot; break;
      case '=': t = Tok::kEq; break;
      case '+': t = Tok::kPlus; break;
      case '&': t = Tok::kAmp; break;
      default:
        throw SyntaxError(SyntaxError::Kind::kSyntax, l, cl,
                          std::string("unexpected character '") + c + "'");
    }
    out.push_back({t, std::string(1, c), l, cl});
    advance(1);
  }
  out.push_back({Tok::kEnd, "<end>", line, col});
  return out;
}

// --- parser ----------------------------------------------------------------

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(lex(text)) {}

  Formula formula_to_end() {
    Formula f = formula();
    if (peek().tok != Tok::kEnd) error("unexpected '" + peek().text + "'");
    return f;
  }

  Term term_to_end() {
    Term t = pterm();
    if (peek().tok != Tok::kEnd) error("unexpected '" + peek().text + "'");
    return t;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  bool peek_word(std::string_view w, std::size_t ahead = 0) const {
    return peek(ahead).tok == Tok::kIdent && peek(ahead).text == w;
  }
  const Token& next() {
    const Token& t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  [[noreturn]] void error(const std::string& what, const Token* at = nullptr) const {
    const Token& t = at ? *at : peek();
    throw SyntaxError(SyntaxError::Kind::kSyntax, t.line, t.column, what);
  }
  [[noreturn]] void sort_error(const Token& t, const std::string& what) const {
    throw SyntaxError(SyntaxError::Kind::kSort, t.line, t.column, what);
  }
  void expect(Tok tok, const char* what) {
    if (peek().tok != tok) error(std::string("expected ") + what + ", got '" + peek().text + "'");
    next();
  }
  void expect_word(std::string_view w) {
    if (!peek_word(w)) error("expected '" + std::string(w) + "', got '" + peek().text + "'");
    next();
  }

  // Variable token of the given sort.
  std::string variable(Sort expected) {
    const Token& t = peek();
    if (t.tok != Tok::kIdent) error("expected a variable, got '" + t.text + "'");
    if (is_keyword(t.text)) {
      if (expected == Sort::kIndividual && (t.text == "I" || t.text == "U")) {
        sort_error(t, "individual variable expected, got plural term '" + t.text + "(...)'");
      }
      error("'" + t.text + "' is reserved");
    }
    if (sort_of(t.text) != expected) {
      sort_error(t, std::string(expected == Sort::kIndividual ? "individual" : "plural") +
                        " variable expected, got '" + t.text + "'");
    }
    next();
    return t.text;
  }

  Formula formula() {
    if (peek_word("forall") || peek_word("exists")) return quantifier();
    return iff();
  }

  Formula quantifier() {
    const bool universal = next().text == "forall";
    const Token& vt = peek();
    if (vt.tok != Tok::kIdent || is_keyword(vt.text)) error("expected a variable after quantifier");
    const std::string var = vt.text;
    const Sort s = sort_of(var);
    next();
    Formula::Bound bound = Formula::Bound::kNone;
    std::optional<Term> range;
    if (peek_word("in")) {
      if (s != Sort::kIndividual) sort_error(peek(), "'in' bound needs an individual variable");
      next();
      bound = Formula::Bound::kIn;
      range = pterm();
    } else if (peek_word("sub")) {
      if (s != Sort::kPlural) sort_error(peek(), "'sub' bound needs a plural variable");
      next();
      bound = Formula::Bound::kSub;
      range = pterm();
    }
    expect(Tok::kDot, "'.'");
    Formula body = formula();
    if (bound == Formula::Bound::kNone) {
      return universal ? Formula::forall(var, body) : Formula::exists(var, body);
    }
    return universal ? Formula::forall(var, bound, *range, body)
                     : Formula::exists(var, bound, *range, body);
  }

  Formula iff() {
    Formula f = imp();
    while (peek().tok == Tok::kIffArrow) {
      next();
      f = Formula::iff(f, imp());
    }
    return f;
  }

  Formula imp() {
    Formula f = disj();
    if (peek().tok == Tok::kArrow) {
      next();
      return Formula::implies(f, imp());
    }
    return f;
  }

  Formula disj() {
    Formula f = conj();
    while (peek_word("or")) {
      next();
      f = Formula::disj(f, conj());
    }
    return f;
  }

  Formula conj() {
    Formula f = unary();
    while (peek_word("and")) {
      next();
      f = Formula::conj(f, unary());
    }
    return f;
  }

  Formula unary() {
    if (peek_word("not")) {
      next();
      return Formula::negate(unary());
    }
    if (peek_word("forall") || peek_word("exists")) return quantifier();
    if (peek().tok == Tok::kLParen) {
      // Either a parenthesized plural term opening a sub/eq atom, or a
      // parenthesized formula.
      const std::size_t saved = pos_;
      try {
        Term t = pterm();
        if (peek_word("sub") || peek_word("eq")) return plural_relation(t);
      } catch (const SyntaxError&) {
      }
      pos_ = saved;
      next();
      Formula f = formula();
      expect(Tok::kRParen, "')'");
      return f;
    }
    return atom();
  }

  Formula plural_relation(const Term& lhs) {
    const bool is_sub = next().text == "sub";
    Term rhs = pterm();
    return is_sub ? Formula::sub(lhs, rhs) : Formula::plural_eq(lhs, rhs);
  }

  Formula atom() {
    const Token& t = peek();
    if (t.tok != Tok::kIdent) error("expected a formula, got '" + t.text + "'");
    if (peek(1).tok == Tok::kLParen) {
      if (t.text == "F") {
        next();
        next();
        Term zz = pterm();
        expect(Tok::kComma, "','");
        std::string x = variable(Sort::kIndividual);
        expect(Tok::kRParen, "')'");
        return Formula::fusion(zz, x);
      }
      if (t.text == "P" || t.text == "PP" || t.text == "O") {
        const std::string pred = t.text;
        next();
        next();
        std::string x = variable(Sort::kIndividual);
        expect(Tok::kComma, "','");
        std::string y = variable(Sort::kIndividual);
        expect(Tok::kRParen, "')'");
        if (pred == "P") return Formula::part(x, y);
        if (pred == "PP") return Formula::proper_part(x, y);
        return Formula::overlap(x, y);
      }
    }
    if (!is_keyword(t.text) && sort_of(t.text) == Sort::kIndividual) {
      std::string x = variable(Sort::kIndividual);
      if (peek().tok == Tok::kEq) {
        next();
        return Formula::equal(x, variable(Sort::kIndividual));
      }
      if (peek_word("in")) {
        next();
        return Formula::member(x, pterm());
      }
      error("expected '=' or 'in' after '" + x + "'");
    }
    Term lhs = pterm();
    if (!peek_word("sub") && !peek_word("eq")) {
      error("expected 'sub' or 'eq', got '" + peek().text + "'");
    }
    return plural_relation(lhs);
  }

  Term pterm() {
    Term t = inter();
    while (peek().tok == Tok::kPlus) {
      next();
      t = Term::unite(t, inter());
    }
    return t;
  }

  Term inter() {
    Term t = base();
    while (peek().tok == Tok::kAmp) {
      next();
      t = Term::intersect(t, base());
    }
    return t;
  }

  Term base() {
    const Token& t = peek();
    if (t.tok == Tok::kLParen) {
      next();
      Term inner = pterm();
      expect(Tok::kRParen, "')'");
      return inner;
    }
    if (t.tok == Tok::kIdent && peek(1).tok == Tok::kLParen && (t.text == "I" || t.text == "U")) {
      const bool singleton = t.text == "I";
      next();
      next();
      if (singleton) {
        std::string x = variable(Sort::kIndividual);
        expect(Tok::kRParen, "')'");
        return Term::singleton(x);
      }
      Term inner = pterm();
      expect(Tok::kRParen, "')'");
      return Term::components(inner);
    }
    if (t.tok == Tok::kIdent && !is_keyword(t.text) && sort_of(t.text) == Sort::kIndividual) {
      sort_error(t, "plural term expected, got individual variable '" + t.text + "'");
    }
    return Term::var(variable(Sort::kPlural));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// --- printer ---------------------------------------------------------------

int precedence(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::kForall:
    case K::kExists: return 0;
    case K::kIff: return 1;
    case K::kImplies: return 2;
    case K::kOr: return 3;
    case K::kAnd: return 4;
    case K::kNot: return 5;
    default: return 6;
  }
}

int precedence(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::kUnion: return 1;
    case Term::Kind::kIntersection: return 2;
    default: return 3;
  }
}

void print_term(const Term& t, int min_prec, std::string& out) {
  const bool parens = precedence(t) < min_prec;
  if (parens) out += '(';
  switch (t.kind()) {
    case Term::Kind::kVar:
      out += t.name();
      break;
    case Term::Kind::kSingleton:
      out += "I(" + t.name() + ")";
      break;
    case Term::Kind::kComponents:
      out += "U(";
      print_term(t.operand(), 0, out);
      out += ')';
      break;
    case Term::Kind::kUnion:
      print_term(t.lhs(), 1, out);
      out += " + ";
      print_term(t.rhs(), 2, out);
      break;
    case Term::Kind::kIntersection:
      print_term(t.lhs(), 2, out);
      out += " & ";
      print_term(t.rhs(), 3, out);
      break;
  }
  if (parens) out += ')';
}

void print_formula(const Formula& f, int min_prec, std::string& out) {
  using K = Formula::Kind;
  const bool parens = precedence(f) < min_prec;
  if (parens) out += '(';
  auto binary = [&](const char* op, int left, int right) {
    print_formula(f.lhs(), left, out);
    out += op;
    print_formula(f.rhs(), right, out);
  };
  switch (f.kind()) {
    case K::kEqual:
      out += f.vars()[0] + " = " + f.vars()[1];
      break;
    case K::kMember:
      out += f.var() + " in ";
      print_term(f.terms()[0], 0, out);
      break;
    case K::kSub:
    case K::kPluralEq:
      print_term(f.terms()[0], 0, out);
      out += f.kind() == K::kSub ? " sub " : " eq ";
      print_term(f.terms()[1], 0, out);
      break;
    case K::kFusion:
      out += "F(";
      print_term(f.terms()[0], 0, out);
      out += ", " + f.var() + ")";
      break;
    case K::kPart:
    case K::kProperPart:
    case K::kOverlap: {
      const char* name = f.kind() == K::kPart ? "P(" : f.kind() == K::kProperPart ? "PP(" : "O(";
      out += name + f.vars()[0] + ", " + f.vars()[1] + ")";
      break;
    }
    case K::kNot:
      out += "not ";
      print_formula(f.body(), 5, out);
      break;
    case K::kAnd: binary(" and ", 4, 5); break;
    case K::kOr: binary(" or ", 3, 4); break;
    case K::kImplies: binary(" -> ", 3, 2); break;
    case K::kIff: binary(" <-> ", 1, 2); break;
    case K::kForall:
    case K::kExists:
      out += f.kind() == K::kForall ? "forall " : "exists ";
      out += f.var();
      if (f.bound() != Formula::Bound::kNone) {
        out += f.bound() == Formula::Bound::kIn ? " in " : " sub ";
        print_term(f.range(), 0, out);
      }
      out += " . ";
      print_formula(f.body(), 0, out);
      break;
  }
  if (parens) out += ')';
}

}  // namespace

Formula parse(std::string_view text) { return Parser(text).formula_to_end(); }
Term parse_term(std::string_view text) { return Parser(text).term_to_end(); }

std::string print(const Formula& f) {
  std::string out;
  print_formula(f, 0, out);
  return out;
}

std::string print(const Term& t) {
  std::string out;
  print_term(t, 0, out);
  return out;
}

// --- theory files ----------------------------------------------------------

std::vector<NamedFormula> parse_theory(std::string_view text) {
  std::vector<NamedFormula> out;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++line_no;
    start = end + 1;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) continue;
    const auto colon = line.find(':');
    if (colon == std::string_view::npos) {
      throw SyntaxError(SyntaxError::Kind::kSyntax, line_no, first + 1,
                        "expected 'name : formula'");
    }
    std::string_view name = line.substr(first, colon - first);
    while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back()))) {
      name.remove_suffix(1);
    }
    if (name.empty()) {
      throw SyntaxError(SyntaxError::Kind::kSyntax, line_no, first + 1, "empty obligation name");
    }
    Formula f = [&] {
      try {
        return parse(line.substr(colon + 1));
      } catch (const SyntaxError& e) {
        throw SyntaxError(e.kind(), line_no, colon + 1 + e.column(), e.message());
      }
    }();
    if (auto free = free_variables(f); !free.empty()) {
      throw SyntaxError(SyntaxError::Kind::kSyntax, line_no, colon + 2,
                        "obligation '" + std::string(name) + "' has free variable '" +
                            free.front() + "'");
    }
    for (const auto& prev : out) {
      if (prev.name == name) {
        throw SyntaxError(SyntaxError::Kind::kSyntax, line_no, first + 1,
                          "duplicate obligation '" + std::string(name) + "'");
      }
    }
    out.push_back({std::string(name), f, std::string(name), std::nullopt});
  }
  return out;
}

std::vector<NamedFormula> read_theory_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LookupError("cannot open theory file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_theory(buf.str());
}

std::string format_theory(const std::vector<NamedFormula>& obligations) {
  std::string out;
  for (const auto& nf : obligations) out += nf.name + " : " + print(nf.sentence) + "\n";
  return out;
}

}  // namespace gem
