// Seeded generator of well-sorted formulas for round-trip and evaluation tests.
#ifndef GEM_TESTS_RANDOM_FORMULA_HPP
#define GEM_TESTS_RANDOM_FORMULA_HPP

#include <random>
#include <string>
#include <vector>

#include "gem/syntax.hpp"

namespace testing_support {

class FormulaGen {
 public:
  explicit FormulaGen(std::uint64_t seed) : rng_(seed) {}

  gem::Formula formula(int depth) {
    using gem::Formula;
    if (depth <= 1) return atom(2);
    switch (pick(9)) {
      case 0: return Formula::negate(formula(depth - 1));
      case 1: return Formula::conj(formula(depth - 1), formula(depth - 1));
      case 2: return Formula::disj(formula(depth - 1), formula(depth - 1));
      case 3: return Formula::implies(formula(depth - 1), formula(depth - 1));
      case 4: return Formula::iff(formula(depth - 1), formula(depth - 1));
      case 5:
      case 6: return quantifier(depth);
      default: return atom(std::min(depth, 3));
    }
  }

  gem::Term term(int depth) {
    using gem::Term;
    if (depth <= 1) return pick(3) ? Term::var(plural()) : Term::singleton(individual());
    switch (pick(5)) {
      case 0: return Term::unite(term(depth - 1), term(depth - 1));
      case 1: return Term::intersect(term(depth - 1), term(depth - 1));
      case 2: return Term::components(term(depth - 1));
      default: return term(1);
    }
  }

  std::string individual() { return kInd[pick(kInd.size())]; }
  std::string plural() { return kPl[pick(kPl.size())]; }

 private:
  gem::Formula atom(int term_depth) {
    using gem::Formula;
    switch (pick(8)) {
      case 0: return Formula::equal(individual(), individual());
      case 1: return Formula::member(individual(), term(term_depth));
      case 2: return Formula::sub(term(term_depth), term(term_depth));
      case 3: return Formula::plural_eq(term(term_depth), term(term_depth));
      case 4: return Formula::fusion(term(term_depth), individual());
      case 5: return Formula::part(individual(), individual());
      case 6: return Formula::proper_part(individual(), individual());
      default: return Formula::overlap(individual(), individual());
    }
  }

  gem::Formula quantifier(int depth) {
    using gem::Formula;
    const bool all = pick(2);
    const bool plural_var = pick(2);
    const std::string v = plural_var ? plural() : individual();
    gem::Formula body = formula(depth - 1);
    if (pick(3) == 0) {
      const auto bound = plural_var ? Formula::Bound::kSub : Formula::Bound::kIn;
      gem::Term range = term(2);
      return all ? Formula::forall(v, bound, range, body) : Formula::exists(v, bound, range, body);
    }
    return all ? Formula::forall(v, body) : Formula::exists(v, body);
  }

  std::size_t pick(std::size_t k) { return std::uniform_int_distribution<std::size_t>(0, k - 1)(rng_); }

  inline static const std::vector<std::string> kInd{"x", "y", "z", "u", "v2"};
  inline static const std::vector<std::string> kPl{"XX", "YY", "ZZ", "Vs"};
  std::mt19937_64 rng_;
};

}  // namespace testing_support

#endif  // GEM_TESTS_RANDOM_FORMULA_HPP
