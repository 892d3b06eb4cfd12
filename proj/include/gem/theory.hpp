// Registry of the axioms, definitions and lemma obligations.
//
// Lemmas are conditional on their theory: "provable in GEM_F" is checked as
// "true in every finite model of GEM_F" within the search bounds. That check
// is sound for refutation but says nothing about infinite models.
#ifndef GEM_THEORY_HPP
#define GEM_THEORY_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gem/syntax.hpp"

namespace gem {

struct Theory {
  std::string name;
  // Signature whose primitive the axioms are stated in, if any.
  std::optional<Signature> signature;
  std::vector<NamedFormula> obligations;

  // Throws LookupError.
  const NamedFormula& find(std::string_view obligation) const;
  bool contains(std::string_view obligation) const;
  // Copy without the named obligation; throws LookupError if absent.
  Theory without(std::string_view obligation) const;
};

// Primitive fusion: exists_F, approx_F, id_F, ext_F, comp_F, wsp_F.
Theory gem_f();
// Primitive part: ref_P, antis_P, trans_P, exists_F, fun_F, with F and O
// expanded into P.
Theory gem_p();
// Proper-part presentation: as_PP, trans_PP, dfP_PP.
Theory pp_axioms();
// Lemma obligations; each carries the signature of the theory it must hold
// in (kFusion: models of gem_f, kPart: models of gem_p).
Theory lemma_suite();
// Comprehension instances and definitions the evaluator implements. The side
// tag is the signature in which the sentence is definitional (none: both).
Theory definitions();

// "gem_f", "gem_p", "pp", "lemmas", "definitions".
std::vector<std::string> builtin_theory_names();
// Throws LookupError for unknown names.
Theory builtin_theory(std::string_view name);
// Builtin name or a path to a .thy file.
Theory load_theory(const std::string& name_or_path);

// The base theory whose models a lemma is checked on.
Theory theory_for_side(Signature side);

// F_zz x written with P only:
//   (forall w in zz . P(w, x)) and forall w . (P(w, x) -> exists v in zz . O(v, w))
// with O expanded as well. Bound names w, v, u must not occur free in zz or x.
Formula fusion_in_parts(const Term& zz, const std::string& x);

}  // namespace gem

#endif  // GEM_THEORY_HPP
