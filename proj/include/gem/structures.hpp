// Finite interpretations of the part signature and the fusion signature,
// the canonical GEM models, and the definitional translations between them.
#ifndef GEM_STRUCTURES_HPP
#define GEM_STRUCTURES_HPP

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "gem/plurality.hpp"

namespace gem {

enum class Signature { kPart, kFusion };

std::string_view to_string(Signature s);

// Domain {0..n-1} with a primitive binary parthood relation. No axioms are
// assumed; P is an arbitrary relation.
class PartStructure {
 public:
  PartStructure() = default;
  explicit PartStructure(std::size_t n);
  PartStructure(std::size_t n, std::span<const std::pair<Index, Index>> pairs);
  // rows[x] = {y : P(x,y)}; the domain size is rows.size().
  static PartStructure from_rows(std::vector<Mask> rows);

  std::size_t size() const { return rows_.size(); }
  bool part(Index x, Index y) const { return (rows_[x] >> y) & 1u; }
  // {y : P(x,y)}
  Mask up(Index x) const { return rows_[x]; }
  // {x : P(x,y)}
  Mask down(Index y) const;
  const std::vector<Mask>& rows() const { return rows_; }
  std::vector<std::pair<Index, Index>> pairs() const;

  friend bool operator==(const PartStructure&, const PartStructure&) = default;

 private:
  std::vector<Mask> rows_;
};

// Domain {0..n-1} with a primitive fusion relation between pluralities and
// individuals. Stored as a table indexed by plurality bitmask.
class FusionStructure {
 public:
  FusionStructure() : table_(1, 0) {}
  explicit FusionStructure(std::size_t n);
  FusionStructure(std::size_t n, std::span<const std::pair<Plurality, Index>> pairs);
  // table[zz] = {x : F(zz,x)}; table.size() must be 2^n.
  static FusionStructure from_table(std::size_t n, std::vector<Mask> table);

  std::size_t size() const { return n_; }
  bool fuses(Plurality zz, Index x) const { return (table_[zz.bits()] >> x) & 1u; }
  // {x : F(zz,x)}
  Mask fusions_of(Plurality zz) const { return table_[zz.bits()]; }
  const std::vector<Mask>& table() const { return table_; }
  // Sorted by (plurality bits, individual).
  std::vector<std::pair<Plurality, Index>> pairs() const;
  // Whether any pair has the empty plurality on its left.
  bool has_empty_fusions() const { return table_[0] != 0; }

  friend bool operator==(const FusionStructure&, const FusionStructure&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Mask> table_;
};

using Structure = std::variant<PartStructure, FusionStructure>;

std::size_t domain_size(const Structure& s);
Signature signature(const Structure& s);

// Nonempty subsets of k atoms ordered by inclusion. Elements are indexed by
// (cardinality, characteristic bitmask). Throws CapacityError if 2^k - 1
// exceeds kMaxDomain.
PartStructure canonical_gem(std::size_t k);

// P xy <-> exists zz (F_zz y and x in zz)
PartStructure induced_part(const FusionStructure& fs);

// F_zz x <-> every member of zz is part of x and every part of x overlaps
// some member of zz.
FusionStructure induced_fusion(const PartStructure& ps);

// O xy <-> exists z (P zx and P zy)
bool overlap(const PartStructure& ps, Index x, Index y);

// PP xy <-> P xy and x != y
bool proper_part(const PartStructure& ps, Index x, Index y);

// Components U zz: on part structures {x : exists y in zz, P xy}; on fusion
// structures {x : exists z in zz, exists yy (F_yy z and x in yy)}.
Plurality components(const Structure& s, Plurality zz);

// Minimal upper bounds: nonempty zz, x above every member, and x below every
// upper bound of zz.
Plurality mub(const PartStructure& ps, Plurality zz);

// Relabels elements: (x,y) becomes (perm[x], perm[y]).
PartStructure permuted(const PartStructure& ps, std::span<const Index> perm);

// Reads and writes the structure literal format:
//   n=<int>
//   part: (x,y) ...          or          fusion: ({a,b},x) ({},y) ...
// Throws StructureError on malformed input, CapacityError on n > kMaxDomain.
Structure parse_structure(std::string_view text);
Structure read_structure_file(const std::string& path);
std::string format_structure(const Structure& s);

}  // namespace gem

#endif  // GEM_STRUCTURES_HPP
