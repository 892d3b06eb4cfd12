// Exhaustive and randomized exploration of finite structures.
//
// Candidate encoding: a part relation on n elements is the n*n-bit number
// with bit x*n+y set iff P(x,y); a fusion relation is the n*2^n-bit number
// with bit zz*n+x set iff F(zz,x). Enumeration runs in increasing code
// order, and every parallel path merges results back into that order.
#ifndef GEM_SEARCH_HPP
#define GEM_SEARCH_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gem/semantics.hpp"
#include "gem/structures.hpp"
#include "gem/theory.hpp"

namespace gem {

struct SearchBounds {
  std::size_t max_n_part = 4;
  std::size_t max_n_fusion = 3;
  std::uint64_t random_samples = 10000;
  std::uint64_t seed = 0;
};

struct ExecOptions {
  std::size_t workers = 1;
  // Largest number of candidates a single enumeration may visit.
  std::uint64_t capacity = std::uint64_t{1} << 26;
  // When false, elapsed_ms fields are reported as 0 so reports are
  // byte-comparable across runs.
  bool timing = true;
};

enum class Strategy { kExhaustive, kRandom };

// --- enumeration -----------------------------------------------------------

std::size_t encoding_bits(Signature kind, std::size_t n);
// 2^bits; throws CapacityError beyond `capacity`.
std::uint64_t candidate_count(Signature kind, std::size_t n,
                              std::uint64_t capacity = ExecOptions{}.capacity);
Structure decode(Signature kind, std::size_t n, std::uint64_t code);
std::uint64_t encode(const Structure& s);

// Half-open range of codes.
struct CodeRange {
  std::uint64_t begin;
  std::uint64_t end;
};
// Splits [0, 2^bits) into `parts` contiguous ranges (code prefixes when
// parts is a power of two), in order.
std::vector<CodeRange> partition(Signature kind, std::size_t n, std::size_t parts,
                                 std::uint64_t capacity = ExecOptions{}.capacity);

// Visits every structure of the range in code order.
void for_each_structure(Signature kind, std::size_t n, CodeRange range,
                        const std::function<void(std::uint64_t, const Structure&)>& fn);
std::vector<Structure> enumerate_structures(Signature kind, std::size_t n,
                                            std::uint64_t capacity = ExecOptions{}.capacity);

// --- model filtering -------------------------------------------------------

// A theory compiled for repeated checking; obligations are tried cheapest
// first at the given domain size.
class ModelFilter {
 public:
  ModelFilter(const Theory& theory, std::size_t n);
  bool accepts(const Interpretation& in) const;
  bool accepts(const Structure& s) const;

 private:
  std::vector<SentenceChecker> checkers_;
};

std::vector<Structure> filter_models(Signature kind, std::size_t n, const Theory& theory,
                                     const ExecOptions& opts = {});
std::uint64_t count_models(Signature kind, const Theory& theory, std::size_t n,
                           const ExecOptions& opts = {});

// --- single-structure checks ------------------------------------------------

struct Verdict {
  std::string obligation;
  bool pass = true;
  std::optional<Assignment> witness;
};

struct CheckReport {
  std::string theory;
  Signature kind = Signature::kPart;
  std::size_t n = 0;
  std::string structure;
  std::vector<Verdict> verdicts;
  std::int64_t elapsed_ms = 0;

  bool all_pass() const;
};

// Failure witnesses are re-evaluated through eval() before being reported;
// an unconfirmed witness is an internal error (std::logic_error).
CheckReport check_theory(const Structure& s, const Theory& t, const ExecOptions& opts = {});

// Re-evaluates the matrix of the sentence's outer universal block under the
// witness with a freshly compiled formula.
bool witness_refutes(const Structure& s, const NamedFormula& nf, const Assignment& witness);

// --- countermodels ---------------------------------------------------------

struct Countermodel {
  Structure structure;
  // Empty when the target has no outer universal block.
  Assignment witness;
};

struct CountermodelResult {
  std::optional<Countermodel> found;
  // "found", "exhausted bounds" or "sample budget spent".
  std::string verdict;
  std::uint64_t candidates = 0;
};

// Searches structures of the base theory's signature (part if it has none)
// for a model of `base` falsifying `target`, at sizes 0..max bound.
CountermodelResult find_countermodel(const Theory& base, const NamedFormula& target,
                                     const SearchBounds& bounds, Strategy strategy = Strategy::kExhaustive,
                                     const ExecOptions& opts = {});

// --- equivalence -----------------------------------------------------------

struct SizeTally {
  std::size_t n = 0;
  bool part_checked = false;
  std::uint64_t part_candidates = 0;
  std::uint64_t part_models = 0;
  // GEM_P models whose induced fusion satisfies GEM_F with dfP_F and dfU_F
  // holding pointwise.
  std::uint64_t fsubp_passes = 0;
  std::uint64_t round_trips_a = 0;
  bool fusion_checked = false;
  std::uint64_t fusion_candidates = 0;
  std::uint64_t fusion_models = 0;
  // GEM_F models whose induced part relation satisfies GEM_P.
  std::uint64_t psubf_passes = 0;
  std::uint64_t round_trips_b = 0;
  // GEM_F models that put the empty plurality in F.
  std::uint64_t empty_fusion_models = 0;
  // Both sides enumerated and the translations are inverse bijections.
  std::optional<bool> bijection;
};

struct Failure {
  std::string obligation;
  std::string structure;
  Assignment witness;
  std::string detail;
};

struct EquivalenceReport {
  std::vector<SizeTally> sizes;
  std::vector<Failure> violations;
  std::uint64_t seed = 0;
  std::int64_t elapsed_ms = 0;

  bool ok() const { return violations.empty(); }
};

EquivalenceReport verify_equivalence(const SearchBounds& bounds, const ExecOptions& opts = {});

// --- lemmas ----------------------------------------------------------------

struct LemmaRow {
  std::string name;
  Signature side = Signature::kPart;
  std::string anchor;
  std::uint64_t models_checked = 0;
  std::vector<Failure> failures;
  std::int64_t elapsed_ms = 0;

  bool pass() const { return failures.empty(); }
};

struct LemmaReport {
  std::vector<LemmaRow> rows;
  // Problems with the model pool itself (an extra model that is not a model).
  std::vector<Failure> setup_failures;
  std::uint64_t seed = 0;
  std::int64_t elapsed_ms = 0;

  bool ok() const;
};

// Checks each lemma on every model of its side's theory: all enumerated
// models up to the bounds, plus `extra_part_models` (and their induced
// fusions on the fusion side), each verified to be a model first. `only`
// restricts to the named lemmas; unknown names throw LookupError.
LemmaReport check_lemmas(const Theory& lemmas, const SearchBounds& bounds,
                         const std::vector<PartStructure>& extra_part_models,
                         const std::vector<std::string>& only = {},
                         const ExecOptions& opts = {});

// --- automorphisms ---------------------------------------------------------

// Permutations preserving P in both directions; n <= 8 (CapacityError).
std::uint64_t automorphism_count(const PartStructure& ps);

// --- JSON reports ----------------------------------------------------------

std::string to_json(const CheckReport& r);
std::string to_json(const EquivalenceReport& r);
std::string to_json(const LemmaReport& r);
std::string to_json(const CountermodelResult& r, const std::string& base,
                    const std::string& target, const SearchBounds& bounds);
// Model listing in the common report schema plus a "structures" array.
std::string models_json(const std::string& theory, Signature kind, std::size_t n,
                        std::uint64_t candidates, const std::vector<Structure>& models,
                        std::uint64_t seed, std::int64_t elapsed_ms);

}  // namespace gem

#endif  // GEM_SEARCH_HPP
