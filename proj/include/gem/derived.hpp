// Table-level forms of the definitional translations. Both signatures reduce
// to a vector of down-sets (down[y] = {x : P xy}); everything else derives
// from that.
#ifndef GEM_DERIVED_HPP
#define GEM_DERIVED_HPP

#include <span>
#include <vector>

#include "gem/structures.hpp"

namespace gem::derived {

std::vector<Mask> down_sets(const PartStructure& ps);
// P via "exists zz (F_zz y and x in zz)".
std::vector<Mask> down_sets(const FusionStructure& fs);

// row[x] = {y : O xy}
std::vector<Mask> overlap_rows(std::span<const Mask> down);

// table[zz] = {x : F_zz x} with F given by the part-side definition.
std::vector<Mask> fusion_table(std::span<const Mask> down, std::span<const Mask> overlap);

// U zz = union of down[z] for z in zz.
inline Mask components(std::span<const Mask> down, Mask zz) {
  Mask out = 0;
  for_each_member(zz, [&](Index z) { out |= down[z]; });
  return out;
}

std::vector<Mask> rows_from_down(std::span<const Mask> down);

}  // namespace gem::derived

#endif  // GEM_DERIVED_HPP
