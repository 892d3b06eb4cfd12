#include <gtest/gtest.h>

#include "gem/errors.hpp"
#include "gem/structures.hpp"

namespace gem {
namespace {

TEST(Structures, CanonicalTwoAtoms) {
  const PartStructure c = canonical_gem(2);
  ASSERT_EQ(c.size(), 3u);
  EXPECT_TRUE(c.part(0, 2));
  EXPECT_TRUE(c.part(1, 2));
  EXPECT_FALSE(c.part(0, 1));
  EXPECT_FALSE(c.part(2, 0));
  EXPECT_EQ(format_structure(c), "n=3\npart: (0,0) (0,2) (1,1) (1,2) (2,2)\n");
}

TEST(Structures, CanonicalSizes) {
  EXPECT_EQ(canonical_gem(1).size(), 1u);
  EXPECT_EQ(canonical_gem(3).size(), 7u);
  EXPECT_EQ(canonical_gem(4).size(), 15u);
  EXPECT_THROW(canonical_gem(5), CapacityError);
  // Atoms come first, the top element last.
  const PartStructure c = canonical_gem(3);
  for (Index x = 0; x < 7; ++x) EXPECT_TRUE(c.part(x, 6));
  EXPECT_EQ(c.down(0), bit(0));
}

TEST(Structures, InducedFusionOfCanonical) {
  const PartStructure c = canonical_gem(2);
  const FusionStructure f = induced_fusion(c);
  EXPECT_TRUE(f.fuses({0, 1}, 2));
  EXPECT_TRUE(f.fuses({0, 2}, 2));
  EXPECT_TRUE(f.fuses({2}, 2));
  EXPECT_TRUE(f.fuses({0}, 0));
  EXPECT_FALSE(f.fuses({0}, 2));
  // Nothing fuses the empty plurality: no individual has no parts.
  EXPECT_FALSE(f.has_empty_fusions());
  EXPECT_EQ(induced_part(f), c);
}

TEST(Structures, EmptyPluralityFusesToPartlessIndividuals) {
  // P empty: individual 0 has no parts, so every part of it (none) overlaps
  // a member of the empty plurality.
  const PartStructure empty(1);
  EXPECT_TRUE(induced_fusion(empty).fuses({}, 0));
}

TEST(Structures, DerivedRelations) {
  const PartStructure c = canonical_gem(2);
  EXPECT_TRUE(overlap(c, 0, 2));
  EXPECT_FALSE(overlap(c, 0, 1));
  EXPECT_TRUE(proper_part(c, 0, 2));
  EXPECT_FALSE(proper_part(c, 2, 2));
  EXPECT_EQ(mub(c, {0, 1}), Plurality({2}));
  EXPECT_EQ(mub(c, {0}), Plurality({0}));
  EXPECT_TRUE(mub(c, {}).empty());
  EXPECT_EQ(components(Structure(c), {2}), Plurality({0, 1, 2}));
  EXPECT_EQ(components(Structure(induced_fusion(c)), {2}), Plurality({0, 1, 2}));
  EXPECT_EQ(components(Structure(c), {}), Plurality());
}

TEST(Structures, Permuted) {
  const PartStructure c = canonical_gem(2);
  const std::vector<Index> swap{1, 0, 2};
  EXPECT_EQ(permuted(c, swap), c);
  const std::vector<Index> rotate{1, 2, 0};
  const PartStructure r = permuted(c, rotate);
  EXPECT_TRUE(r.part(1, 0));
  EXPECT_TRUE(r.part(2, 0));
}

TEST(Structures, ParseAndFormat) {
  const Structure s = parse_structure("# comment\nn=3\npart: (0,0) (1,1)\n  (2,2) (0,2)\n");
  EXPECT_EQ(signature(s), Signature::kPart);
  EXPECT_EQ(domain_size(s), 3u);
  EXPECT_EQ(parse_structure(format_structure(s)), s);

  const Structure f = parse_structure("n=2\nfusion: ({},1) ({0,1},0) ({1},1)\n");
  ASSERT_EQ(signature(f), Signature::kFusion);
  EXPECT_TRUE(std::get<FusionStructure>(f).has_empty_fusions());
  EXPECT_EQ(format_structure(f), "n=2\nfusion: ({},1) ({1},1) ({0,1},0)\n");
  EXPECT_EQ(parse_structure(format_structure(f)), f);

  EXPECT_EQ(domain_size(parse_structure("n=0\npart:\n")), 0u);
}

TEST(Structures, ParseErrors) {
  EXPECT_THROW(parse_structure("n=2\npart: (0,0) (1,"), StructureError);
  EXPECT_THROW(parse_structure("n=2\npart: (0,2)"), StructureError);
  EXPECT_THROW(parse_structure("part: (0,0)"), StructureError);
  EXPECT_THROW(parse_structure("n=2\nfusion: ({3},0)"), StructureError);
  EXPECT_THROW(parse_structure("n=2\nrelation: (0,0)"), StructureError);
  EXPECT_THROW(parse_structure("n=17\npart:"), CapacityError);
  EXPECT_THROW(read_structure_file("/nonexistent/file.str"), StructureError);
}

TEST(Structures, FusionTableSizeChecked) {
  EXPECT_THROW(FusionStructure::from_table(2, {0, 0, 0}), StructureError);
  EXPECT_THROW(FusionStructure::from_table(1, {0, 2}), StructureError);
}

TEST(Structures, PluralityBasics) {
  const Plurality p{0, 2};
  EXPECT_EQ(p.size(), 2u);
  EXPECT_TRUE(p.contains(2));
  EXPECT_TRUE(Plurality({2}).included_in(p));
  EXPECT_EQ(to_string(p), "{0,2}");
  EXPECT_EQ(to_string(Plurality()), "{}");
  EXPECT_EQ(p.members(), (std::vector<Index>{0, 2}));
}

}  // namespace
}  // namespace gem
