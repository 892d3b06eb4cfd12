// Pluralities over a finite domain, stored as membership bitmasks.
#ifndef GEM_PLURALITY_HPP
#define GEM_PLURALITY_HPP

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace gem {

using Index = std::uint32_t;
using Mask = std::uint32_t;

// Largest domain any structure may have. Plural quantifiers range over 2^n
// subsets, so anything beyond this is out of reach for exhaustive evaluation.
inline constexpr std::size_t kMaxDomain = 16;

constexpr Mask bit(Index i) { return Mask{1} << i; }
constexpr Mask full_mask(std::size_t n) {
  return n >= 32 ? ~Mask{0} : (Mask{1} << n) - 1;
}

// A (possibly empty) set of domain indices. Bit i set <=> i is one of them.
class Plurality {
 public:
  constexpr Plurality() = default;
  constexpr explicit Plurality(Mask bits) : bits_(bits) {}
  Plurality(std::initializer_list<Index> members) {
    for (Index i : members) bits_ |= bit(i);
  }

  static constexpr Plurality singleton(Index i) { return Plurality(bit(i)); }

  constexpr Mask bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool contains(Index i) const { return (bits_ >> i) & 1u; }
  constexpr std::size_t size() const { return std::popcount(bits_); }
  constexpr bool included_in(Plurality other) const {
    return (bits_ & ~other.bits_) == 0;
  }
  // Largest member + 1, or 0 for the empty plurality.
  constexpr std::size_t extent() const { return 32 - std::countl_zero(bits_); }

  std::vector<Index> members() const {
    std::vector<Index> out;
    for (Mask m = bits_; m != 0; m &= m - 1) out.push_back(std::countr_zero(m));
    return out;
  }

  friend constexpr Plurality operator|(Plurality a, Plurality b) {
    return Plurality(a.bits_ | b.bits_);
  }
  friend constexpr Plurality operator&(Plurality a, Plurality b) {
    return Plurality(a.bits_ & b.bits_);
  }
  friend constexpr bool operator==(Plurality, Plurality) = default;
  friend constexpr auto operator<=>(Plurality, Plurality) = default;

 private:
  Mask bits_ = 0;
};

// "{0,2}" / "{}".
std::string to_string(Plurality p);

// Calls fn(i) for each member in increasing order.
template <typename Fn>
void for_each_member(Mask m, Fn&& fn) {
  for (; m != 0; m &= m - 1) fn(static_cast<Index>(std::countr_zero(m)));
}

}  // namespace gem

#endif  // GEM_PLURALITY_HPP
