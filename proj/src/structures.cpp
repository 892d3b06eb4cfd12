#include "gem/structures.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <numeric>
#include <sstream>

#include "gem/derived.hpp"
#include "gem/errors.hpp"

namespace gem {

std::string to_string(Plurality p) {
  std::string out = "{";
  bool first = true;
  for (Index i : p.members()) {
    if (!first) out += ',';
    out += std::to_string(i);
    first = false;
  }
  return out + "}";
}

std::string_view to_string(Signature s) {
  return s == Signature::kPart ? "part" : "fusion";
}

namespace {

void check_domain(std::size_t n) {
  if (n > kMaxDomain) {
    throw CapacityError("domain size " + std::to_string(n) + " exceeds limit " +
                        std::to_string(kMaxDomain));
  }
}

void check_index(std::size_t n, Index i) {
  if (i >= n) {
    throw StructureError("index " + std::to_string(i) + " out of range for domain size " +
                         std::to_string(n));
  }
}

}  // namespace

// --- PartStructure ---------------------------------------------------------

PartStructure::PartStructure(std::size_t n) : rows_((check_domain(n), n), 0) {}

PartStructure::PartStructure(std::size_t n, std::span<const std::pair<Index, Index>> pairs)
    : PartStructure(n) {
  for (auto [x, y] : pairs) {
    check_index(n, x);
    check_index(n, y);
    rows_[x] |= bit(y);
  }
}

PartStructure PartStructure::from_rows(std::vector<Mask> rows) {
  check_domain(rows.size());
  const Mask full = full_mask(rows.size());
  for (Mask r : rows) {
    if ((r & ~full) != 0) throw StructureError("part row refers outside the domain");
  }
  PartStructure ps;
  ps.rows_ = std::move(rows);
  return ps;
}

Mask PartStructure::down(Index y) const {
  Mask out = 0;
  for (Index x = 0; x < rows_.size(); ++x) {
    if (part(x, y)) out |= bit(x);
  }
  return out;
}

std::vector<std::pair<Index, Index>> PartStructure::pairs() const {
  std::vector<std::pair<Index, Index>> out;
  for (Index x = 0; x < rows_.size(); ++x) {
    for_each_member(rows_[x], [&](Index y) { out.emplace_back(x, y); });
  }
  return out;
}

// --- FusionStructure -------------------------------------------------------

FusionStructure::FusionStructure(std::size_t n)
    : n_((check_domain(n), n)), table_(std::size_t{1} << n, 0) {}

FusionStructure::FusionStructure(std::size_t n,
                                 std::span<const std::pair<Plurality, Index>> pairs)
    : FusionStructure(n) {
  const Mask full = full_mask(n);
  for (auto [zz, x] : pairs) {
    if ((zz.bits() & ~full) != 0) {
      throw StructureError("plurality " + to_string(zz) + " refers outside the domain");
    }
    check_index(n, x);
    table_[zz.bits()] |= bit(x);
  }
}

FusionStructure FusionStructure::from_table(std::size_t n, std::vector<Mask> table) {
  check_domain(n);
  if (table.size() != (std::size_t{1} << n)) {
    throw StructureError("fusion table must have 2^n entries");
  }
  const Mask full = full_mask(n);
  for (Mask t : table) {
    if ((t & ~full) != 0) throw StructureError("fusion entry refers outside the domain");
  }
  FusionStructure fs;
  fs.n_ = n;
  fs.table_ = std::move(table);
  return fs;
}

std::vector<std::pair<Plurality, Index>> FusionStructure::pairs() const {
  std::vector<std::pair<Plurality, Index>> out;
  for (std::size_t zz = 0; zz < table_.size(); ++zz) {
    for_each_member(table_[zz], [&](Index x) {
      out.emplace_back(Plurality(static_cast<Mask>(zz)), x);
    });
  }
  return out;
}

// --- Structure -------------------------------------------------------------

std::size_t domain_size(const Structure& s) {
  return std::visit([](const auto& v) { return v.size(); }, s);
}

Signature signature(const Structure& s) {
  return std::holds_alternative<PartStructure>(s) ? Signature::kPart : Signature::kFusion;
}

// --- derived tables --------------------------------------------------------

namespace derived {

std::vector<Mask> down_sets(const PartStructure& ps) {
  std::vector<Mask> down(ps.size(), 0);
  for (Index x = 0; x < ps.size(); ++x) {
    for_each_member(ps.up(x), [&](Index y) { down[y] |= bit(x); });
  }
  return down;
}

std::vector<Mask> down_sets(const FusionStructure& fs) {
  std::vector<Mask> down(fs.size(), 0);
  const auto& table = fs.table();
  for (std::size_t zz = 0; zz < table.size(); ++zz) {
    for_each_member(table[zz], [&](Index y) { down[y] |= static_cast<Mask>(zz); });
  }
  return down;
}

std::vector<Mask> overlap_rows(std::span<const Mask> down) {
  std::vector<Mask> rows(down.size(), 0);
  for (Index x = 0; x < down.size(); ++x) {
    for (Index y = 0; y < down.size(); ++y) {
      if ((down[x] & down[y]) != 0) rows[x] |= bit(y);
    }
  }
  return rows;
}

std::vector<Mask> fusion_table(std::span<const Mask> down, std::span<const Mask> overlap) {
  const std::size_t n = down.size();
  std::vector<Mask> table(std::size_t{1} << n, 0);
  for (std::size_t zz = 0; zz < table.size(); ++zz) {
    const Mask members = static_cast<Mask>(zz);
    for (Index x = 0; x < n; ++x) {
      if ((members & ~down[x]) != 0) continue;
      bool covered = true;
      for_each_member(down[x], [&](Index y) {
        if ((members & overlap[y]) == 0) covered = false;
      });
      if (covered) table[zz] |= bit(x);
    }
  }
  return table;
}

std::vector<Mask> rows_from_down(std::span<const Mask> down) {
  std::vector<Mask> rows(down.size(), 0);
  for (Index y = 0; y < down.size(); ++y) {
    for_each_member(down[y], [&](Index x) { rows[x] |= bit(y); });
  }
  return rows;
}

}  // namespace derived

// --- operations ------------------------------------------------------------

PartStructure canonical_gem(std::size_t k) {
  if (k >= 32 || (std::size_t{1} << k) - 1 > kMaxDomain) {
    throw CapacityError("canonical_gem(" + std::to_string(k) + ") exceeds domain limit " +
                        std::to_string(kMaxDomain));
  }
  std::vector<Mask> subsets;
  for (Mask s = 1; s < (Mask{1} << k); ++s) subsets.push_back(s);
  std::stable_sort(subsets.begin(), subsets.end(), [](Mask a, Mask b) {
    return std::popcount(a) != std::popcount(b) ? std::popcount(a) < std::popcount(b) : a < b;
  });
  std::vector<Mask> rows(subsets.size(), 0);
  for (Index x = 0; x < subsets.size(); ++x) {
    for (Index y = 0; y < subsets.size(); ++y) {
      if ((subsets[x] & ~subsets[y]) == 0) rows[x] |= bit(y);
    }
  }
  return PartStructure::from_rows(std::move(rows));
}

PartStructure induced_part(const FusionStructure& fs) {
  return PartStructure::from_rows(derived::rows_from_down(derived::down_sets(fs)));
}

FusionStructure induced_fusion(const PartStructure& ps) {
  const auto down = derived::down_sets(ps);
  return FusionStructure::from_table(ps.size(),
                                     derived::fusion_table(down, derived::overlap_rows(down)));
}

bool overlap(const PartStructure& ps, Index x, Index y) {
  check_index(ps.size(), x);
  check_index(ps.size(), y);
  return (ps.down(x) & ps.down(y)) != 0;
}

bool proper_part(const PartStructure& ps, Index x, Index y) {
  check_index(ps.size(), x);
  check_index(ps.size(), y);
  return x != y && ps.part(x, y);
}

Plurality components(const Structure& s, Plurality zz) {
  if ((zz.bits() & ~full_mask(domain_size(s))) != 0) {
    throw StructureError("plurality " + to_string(zz) + " refers outside the domain");
  }
  const auto down = std::visit([](const auto& v) { return derived::down_sets(v); }, s);
  return Plurality(derived::components(down, zz.bits()));
}

Plurality mub(const PartStructure& ps, Plurality zz) {
  if (zz.empty()) return {};
  const std::size_t n = ps.size();
  Mask upper = full_mask(n);
  for_each_member(zz.bits(), [&](Index y) { upper &= ps.up(y); });
  Mask out = 0;
  for_each_member(upper, [&](Index x) {
    if ((upper & ~ps.up(x)) == 0) out |= bit(x);
  });
  return Plurality(out);
}

PartStructure permuted(const PartStructure& ps, std::span<const Index> perm) {
  if (perm.size() != ps.size()) throw StructureError("permutation size mismatch");
  std::vector<Mask> rows(ps.size(), 0);
  for (auto [x, y] : ps.pairs()) rows[perm[x]] |= bit(perm[y]);
  return PartStructure::from_rows(std::move(rows));
}

// --- literal format --------------------------------------------------------

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size()) {
      if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      } else if (text_[pos_] == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }
  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }
  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  bool accept_word(std::string_view w) {
    skip_space();
    if (text_.substr(pos_, w.size()) == w) {
      pos_ += w.size();
      return true;
    }
    return false;
  }
  std::size_t number() {
    skip_space();
    std::size_t start = pos_;
    std::size_t value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + static_cast<std::size_t>(text_[pos_] - '0');
      if (value > 1'000'000) fail("number too large");
      ++pos_;
    }
    if (start == pos_) fail("expected a number");
    return value;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw StructureError("structure literal, offset " + std::to_string(pos_) + ": " + what);
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Structure parse_structure(std::string_view text) {
  Cursor c(text);
  if (!c.accept_word("n")) c.fail("expected header 'n=<int>'");
  c.expect('=');
  const std::size_t n = c.number();
  check_domain(n);
  if (c.accept_word("part")) {
    c.expect(':');
    std::vector<std::pair<Index, Index>> pairs;
    while (!c.at_end()) {
      c.expect('(');
      Index x = static_cast<Index>(c.number());
      c.expect(',');
      Index y = static_cast<Index>(c.number());
      c.expect(')');
      pairs.emplace_back(x, y);
    }
    return PartStructure(n, pairs);
  }
  if (c.accept_word("fusion")) {
    c.expect(':');
    std::vector<std::pair<Plurality, Index>> pairs;
    while (!c.at_end()) {
      c.expect('(');
      c.expect('{');
      Mask members = 0;
      if (!c.accept('}')) {
        do {
          std::size_t i = c.number();
          if (i >= n) c.fail("member " + std::to_string(i) + " out of range");
          members |= bit(static_cast<Index>(i));
        } while (c.accept(','));
        c.expect('}');
      }
      c.expect(',');
      Index x = static_cast<Index>(c.number());
      c.expect(')');
      pairs.emplace_back(Plurality(members), x);
    }
    return FusionStructure(n, pairs);
  }
  c.fail("expected 'part:' or 'fusion:'");
}

Structure read_structure_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw StructureError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_structure(buf.str());
}

std::string format_structure(const Structure& s) {
  std::ostringstream out;
  out << "n=" << domain_size(s) << "\n";
  if (const auto* ps = std::get_if<PartStructure>(&s)) {
    out << "part:";
    for (auto [x, y] : ps->pairs()) out << " (" << x << "," << y << ")";
  } else {
    out << "fusion:";
    for (auto [zz, x] : std::get<FusionStructure>(s).pairs()) {
      out << " (" << to_string(zz) << "," << x << ")";
    }
  }
  out << "\n";
  return out.str();
}

}  // namespace gem
