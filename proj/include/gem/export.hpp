// Proof obligations as TPTP FOF problem files.
//
// The two sorts are relativized: ind/1 and plur/1 guard every quantifier,
// membership is mem/2. Pluralities get no comprehension schema; only the
// named instances (singleton, union, intersection, components, zzstar) are
// emitted as axioms for the term formers a problem actually uses.
#ifndef GEM_EXPORT_HPP
#define GEM_EXPORT_HPP

#include <string>
#include <utility>
#include <vector>

#include "gem/theory.hpp"

namespace gem {

struct Obligation {
  std::string name;
  std::string anchor;
  Signature side = Signature::kPart;
  std::vector<NamedFormula> axioms;
  // Definitions of the non-primitive predicates used (dfP_F, dfF_P, dfO, ...).
  std::vector<NamedFormula> definitions;
  // Comprehension instances, drawn from I, union, intersection, U_F, U_P, zzstar.
  std::vector<std::string> instances;
  NamedFormula conjecture;
};

// FOF rendering of f (no trailing period). Free variables stay free.
std::string encode(const Formula& f);

// The theory's signature (else the conjecture's side, else part) picks the
// primitive; definitions and instances are closed under use.
Obligation make_obligation(const std::string& name, const Theory& theory,
                           const NamedFormula& conjecture);
std::string emit_obligation(const Obligation& ob);
std::string emit_obligation(const std::string& name, const Theory& theory,
                            const NamedFormula& conjecture);
// Registry lemma by name, checked against its side's theory. Throws
// LookupError for unknown names.
Obligation lemma_obligation(const std::string& name);
// "F_P=Mub" -> "F_P_Mub.p".
std::string problem_file_name(const std::string& name);
// One (file name, text) pair per registry lemma, in registry order.
std::vector<std::pair<std::string, std::string>> emit_all_lemmas();

}  // namespace gem

#endif  // GEM_EXPORT_HPP
