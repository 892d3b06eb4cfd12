// Two-sorted plural language: plural terms, formulas, parser and printer.
//
// Individual variables are identifiers starting with a lowercase letter,
// plural variables start with an uppercase letter. Concrete syntax:
//
//   formula := quant | iff
//   quant   := ("forall"|"exists") VAR [("in"|"sub") pterm] "." formula
//   iff     := imp {"<->" imp}
//   imp     := or ["->" imp]
//   or      := and {"or" and}
//   and     := not {"and" not}
//   not     := "not" not | quant | atom | "(" formula ")"
//   atom    := "F(" pterm "," ivar ")" | ("P"|"PP"|"O") "(" ivar "," ivar ")"
//            | ivar "=" ivar | ivar "in" pterm | pterm "sub" pterm | pterm "eq" pterm
//   pterm   := inter {"+" inter} ;  inter := base {"&" base}
//   base    := PVAR | "I(" ivar ")" | "U(" pterm ")" | "(" pterm ")"
//
// A quantifier in operand position extends as far right as possible; the
// printer always parenthesizes it there.
#ifndef GEM_SYNTAX_HPP
#define GEM_SYNTAX_HPP

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gem/structures.hpp"

namespace gem {

enum class Sort { kIndividual, kPlural };

// Sort implied by a variable name; throws SyntaxError on names that are not
// identifiers.
Sort sort_of(std::string_view name);

class Term {
 public:
  enum class Kind { kVar, kSingleton, kUnion, kIntersection, kComponents };

  static Term var(std::string name);
  static Term singleton(std::string individual);
  static Term unite(Term a, Term b);
  static Term intersect(Term a, Term b);
  static Term components(Term a);

  Kind kind() const;
  // Plural variable name (kVar) or the individual variable (kSingleton).
  const std::string& name() const;
  const Term& lhs() const;
  const Term& rhs() const;
  // Operand of kComponents.
  const Term& operand() const { return lhs(); }

  friend bool operator==(const Term& a, const Term& b);

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

class Formula {
 public:
  enum class Kind {
    kEqual,       // x = y
    kMember,      // x in T
    kSub,         // T sub S
    kPluralEq,    // T eq S
    kFusion,      // F(T, x)
    kPart,        // P(x, y)
    kProperPart,  // PP(x, y)
    kOverlap,     // O(x, y)
    kNot,
    kAnd,
    kOr,
    kImplies,
    kIff,
    kForall,
    kExists,
  };
  // Restriction on a quantified variable: none, "in T" (individuals) or
  // "sub T" (pluralities).
  enum class Bound { kNone, kIn, kSub };

  static Formula equal(std::string x, std::string y);
  static Formula member(std::string x, Term t);
  static Formula sub(Term a, Term b);
  static Formula plural_eq(Term a, Term b);
  static Formula fusion(Term t, std::string x);
  static Formula part(std::string x, std::string y);
  static Formula proper_part(std::string x, std::string y);
  static Formula overlap(std::string x, std::string y);
  static Formula negate(Formula f);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula implies(Formula a, Formula b);
  static Formula iff(Formula a, Formula b);
  // Restricted forms take a bound term; the bound must match the variable's
  // sort (kIn for individuals, kSub for pluralities).
  static Formula forall(std::string var, Formula body);
  static Formula exists(std::string var, Formula body);
  static Formula forall(std::string var, Bound bound, Term range, Formula body);
  static Formula exists(std::string var, Bound bound, Term range, Formula body);

  Kind kind() const;
  bool is_atom() const { return kind() <= Kind::kOverlap; }
  bool is_quantifier() const { return kind() == Kind::kForall || kind() == Kind::kExists; }

  // Individual variable arguments of atoms, in order; quantified variable.
  const std::vector<std::string>& vars() const;
  const std::string& var() const { return vars().front(); }
  // Plural term arguments of atoms; the range of a restricted quantifier.
  const std::vector<Term>& terms() const;
  const Term& range() const { return terms().front(); }
  // Subformulas: one for kNot and quantifiers, two for binary connectives.
  const std::vector<Formula>& children() const;
  const Formula& body() const { return children().front(); }
  const Formula& lhs() const { return children()[0]; }
  const Formula& rhs() const { return children()[1]; }
  Bound bound() const;
  Sort var_sort() const { return sort_of(var()); }

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Left-associated conjunction of a nonempty list.
Formula conj_all(const std::vector<Formula>& fs);

// Free variables in order of first occurrence.
std::vector<std::string> free_variables(const Formula& f);
std::vector<std::string> free_variables(const Term& t);

// Replaces restricted quantifiers by their unrestricted expansions:
// "forall x in T . f" -> "forall x . (x in T -> f)",
// "exists XX sub T . f" -> "exists XX . (XX sub T and f)".
// A bound name that also occurs in T is renamed apart (x -> x_1).
Formula desugar(const Formula& f);

// Throws SyntaxError (kSyntax or kSort) with 1-based line/column.
Formula parse(std::string_view text);
Term parse_term(std::string_view text);

std::string print(const Formula& f);
std::string print(const Term& t);

struct NamedFormula {
  std::string name;
  Formula sentence;
  // Citation for the obligation (label of the axiom, definition or lemma).
  std::string anchor;
  // For lemma obligations: the theory whose models the sentence must hold in.
  std::optional<Signature> side;
};

// Theory file: lines "name : formula", '#' starts a comment. Sentences must
// be closed. Errors carry the file line.
std::vector<NamedFormula> parse_theory(std::string_view text);
std::vector<NamedFormula> read_theory_file(const std::string& path);
std::string format_theory(const std::vector<NamedFormula>& obligations);

}  // namespace gem

#endif  // GEM_SYNTAX_HPP
