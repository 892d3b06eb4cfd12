// Evaluation of formulas over finite structures.
//
// Individual quantifiers range over {0..n-1}; plural quantifiers range over
// all 2^n subsets including the empty one, enumerated in increasing bitmask
// order. Atoms that are not primitive in a structure's signature are
// evaluated through the definitional translations (P, O, PP and U from F on
// fusion structures; F, O, PP and U from P on part structures).
#ifndef GEM_SEMANTICS_HPP
#define GEM_SEMANTICS_HPP

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gem/structures.hpp"
#include "gem/syntax.hpp"

namespace gem {

struct Assignment {
  std::map<std::string, Index> individuals;
  std::map<std::string, Plurality> pluralities;

  bool empty() const { return individuals.empty() && pluralities.empty(); }
  friend bool operator==(const Assignment&, const Assignment&) = default;
};

std::string to_string(const Assignment& a);

struct EvalOutcome {
  bool value = true;
  // Bindings of the outermost quantifier block: the first counterexample of
  // a failing universal block, or the first instance of a true existential
  // block.
  std::optional<Assignment> witness;
};

// Flattened view of a structure with derived relations precomputed; the
// fusion table of a part structure is built on first use. Borrows the
// structure, which must outlive it. Not safe to share between threads.
class Interpretation {
 public:
  explicit Interpretation(const Structure& s);
  Interpretation(const Interpretation&) = delete;
  Interpretation& operator=(const Interpretation&) = delete;

  std::size_t size() const { return n_; }
  Signature signature() const { return signature_; }
  const Structure& structure() const { return *structure_; }

  bool part(Index x, Index y) const { return (down_[y] >> x) & 1u; }
  bool proper_part(Index x, Index y) const { return x != y && part(x, y); }
  bool overlap(Index x, Index y) const { return (overlap_[x] >> y) & 1u; }
  Mask fusions_of(Mask zz) const {
    if (fusion_ == nullptr) build_fusion_table();
    return (*fusion_)[zz];
  }
  Mask components(Mask zz) const {
    Mask out = 0;
    for_each_member(zz, [&](Index z) { out |= down_[z]; });
    return out;
  }

 private:
  void build_fusion_table() const;

  const Structure* structure_;
  std::size_t n_;
  Signature signature_;
  std::array<Mask, kMaxDomain> down_{};
  std::array<Mask, kMaxDomain> overlap_{};
  mutable const std::vector<Mask>* fusion_ = nullptr;
  mutable std::vector<Mask> derived_fusion_;
};

// A formula compiled to slot-addressed nodes. Free variables (given in the
// constructor) occupy slots 0..k-1 in the given order.
class CompiledFormula {
 public:
  static constexpr std::size_t kMaxSlots = 64;
  using Values = std::array<std::uint32_t, kMaxSlots>;

  explicit CompiledFormula(const Formula& f, std::vector<std::string> free = {});

  const std::vector<std::string>& free_variables() const { return free_; }
  // values[i] binds free variable i (an index or a plurality mask).
  bool evaluate(const Interpretation& in, Values& values) const;
  // Slots bound by the outermost block of like quantifiers, outermost first.
  const std::vector<std::pair<std::string, std::size_t>>& outer_block() const {
    return outer_block_;
  }
  // Whether any F atom occurs (part structures then need the fusion table).
  bool uses_fusion() const { return uses_fusion_; }

 private:
  struct TermNode {
    Term::Kind kind;
    int slot = -1;
    int a = -1;
    int b = -1;
  };
  struct Node {
    Formula::Kind kind;
    Formula::Bound bound = Formula::Bound::kNone;
    Sort sort = Sort::kIndividual;
    int slot0 = -1;
    int slot1 = -1;
    int t0 = -1;
    int t1 = -1;
    int c0 = -1;
    int c1 = -1;
    // Quantifier bound by the one-point rule to slot1 or term t0.
    bool point = false;
  };
  class Builder;

  Mask term(int t, const Interpretation& in, const Values& v) const;
  bool eval(int i, const Interpretation& in, Values& v) const;

  std::vector<std::string> free_;
  std::vector<TermNode> terms_;
  std::vector<Node> nodes_;
  int root_ = -1;
  std::vector<std::pair<std::string, std::size_t>> outer_block_;
  bool uses_fusion_ = false;
};

// Checks one closed sentence, producing witnesses. Build once, reuse across
// structures.
class SentenceChecker {
 public:
  explicit SentenceChecker(const NamedFormula& nf);

  const NamedFormula& obligation() const { return nf_; }
  bool holds(const Interpretation& in) const;
  EvalOutcome check(const Interpretation& in) const;
  // Fast form of check: on failure of a universal block, raw witness values
  // (one per outer-block variable) are written to `witness`.
  bool check_raw(const Interpretation& in, std::vector<std::uint32_t>& witness) const;
  // Re-evaluates the outer block's matrix ("restrictions -> body") under the
  // given bindings through a separately compiled formula; true iff the
  // bindings falsify the sentence.
  bool refutes(const Interpretation& in, std::span<const std::uint32_t> witness) const;
  bool refutes(const Interpretation& in, const Assignment& witness) const;
  Assignment to_assignment(std::span<const std::uint32_t> witness) const;
  // Whether the outermost block is universal (failure witnesses exist).
  bool universal_block() const { return universal_; }

 private:
  NamedFormula nf_;
  CompiledFormula program_;
  CompiledFormula matrix_;
  bool universal_ = false;
};

// The outer block of like quantifiers of f and the matrix under it, with
// restrictions turned into guards ("->" for forall, "and" for exists).
struct QuantifierBlock {
  Formula::Kind kind;  // kForall or kExists; kNot when f has no outer quantifier
  std::vector<std::string> variables;
  Formula matrix;
};
QuantifierBlock outer_block(const Formula& f);

// Throws EvalError when a free variable is unbound.
Plurality eval_term(const Structure& s, const Term& t, const Assignment& a);
bool eval(const Structure& s, const Formula& f, const Assignment& a = {});
// f must be closed.
EvalOutcome check_sentence(const Structure& s, const NamedFormula& nf);

// Rough evaluation cost at domain size n: quantifiers multiply by their
// range (n or 2^n). Used only to order checks.
double estimated_cost(const Formula& f, std::size_t n);

}  // namespace gem

#endif  // GEM_SEMANTICS_HPP
