#include <gtest/gtest.h>

#include <numeric>
#include <set>

#include "gem/errors.hpp"
#include "gem/search.hpp"
#include "oracle.hpp"

namespace gem {
namespace {

TEST(Search, CandidateCounts) {
  EXPECT_EQ(candidate_count(Signature::kPart, 0), 1u);
  EXPECT_EQ(candidate_count(Signature::kPart, 2), 16u);
  EXPECT_EQ(candidate_count(Signature::kPart, 3), 512u);
  EXPECT_EQ(candidate_count(Signature::kFusion, 1), 4u);
  EXPECT_EQ(candidate_count(Signature::kFusion, 2), 256u);
  EXPECT_EQ(candidate_count(Signature::kFusion, 3), 1u << 24);
  EXPECT_THROW(candidate_count(Signature::kFusion, 4), CapacityError);
  EXPECT_THROW(candidate_count(Signature::kPart, 6), CapacityError);
  EXPECT_THROW(candidate_count(Signature::kPart, 3, 100), CapacityError);
}

TEST(Search, DecodeMatchesOracleEncoding) {
  for (std::uint64_t code = 0; code < 512; ++code) {
    const auto s = std::get<PartStructure>(decode(Signature::kPart, 3, code));
    const auto o = oracle::decode_part(3, code);
    for (Index x = 0; x < 3; ++x) {
      for (Index y = 0; y < 3; ++y) ASSERT_EQ(s.part(x, y), o.part[x][y]);
    }
    ASSERT_EQ(encode(Structure(s)), code);
  }
  for (std::uint64_t code = 0; code < 256; ++code) {
    const auto s = std::get<FusionStructure>(decode(Signature::kFusion, 2, code));
    const auto o = oracle::decode_fusion(2, code);
    for (Mask zz = 0; zz < 4; ++zz) {
      for (Index x = 0; x < 2; ++x) ASSERT_EQ(s.fuses(Plurality(zz), x), o.fuses[zz][x]);
    }
    ASSERT_EQ(encode(Structure(s)), code);
  }
}

TEST(Search, EnumerationIsLexicographicAndComplete) {
  const auto all = enumerate_structures(Signature::kPart, 2);
  ASSERT_EQ(all.size(), 16u);
  for (std::uint64_t i = 0; i < all.size(); ++i) EXPECT_EQ(encode(all[i]), i);
}

TEST(Search, PartitionCoversRange) {
  for (std::size_t parts : {1, 3, 7, 64, 1000}) {
    const auto ranges = partition(Signature::kPart, 3, parts);
    std::uint64_t next = 0;
    for (const auto& r : ranges) {
      EXPECT_EQ(r.begin, next);
      EXPECT_LT(r.begin, r.end);
      next = r.end;
    }
    EXPECT_EQ(next, 512u);
    EXPECT_LE(ranges.size(), std::min<std::size_t>(parts, 512));
  }
}

TEST(Search, ModelCounts) {
  const std::vector<std::uint64_t> part{1, 1, 0, 3, 0};
  for (std::size_t n = 0; n < part.size(); ++n) {
    EXPECT_EQ(count_models(Signature::kPart, gem_p(), n), part[n]) << n;
  }
  const std::vector<std::uint64_t> fusion{1, 1, 0, 3};
  for (std::size_t n = 0; n < fusion.size(); ++n) {
    EXPECT_EQ(count_models(Signature::kFusion, gem_f(), n), fusion[n]) << n;
  }
  EXPECT_EQ(count_models(Signature::kPart, pp_axioms(), 3), 19u);
}

TEST(Search, FilterIsIndependentOfWorkers) {
  const auto one = filter_models(Signature::kPart, 4, pp_axioms(), {1});
  const auto four = filter_models(Signature::kPart, 4, pp_axioms(), {4});
  EXPECT_EQ(one, four);
  EXPECT_EQ(one.size(), 219u);  // labeled partial orders on 4 points
}

TEST(Search, Automorphisms) {
  EXPECT_EQ(automorphism_count(canonical_gem(1)), 1u);
  EXPECT_EQ(automorphism_count(canonical_gem(2)), 2u);
  EXPECT_EQ(automorphism_count(canonical_gem(3)), 6u);
  EXPECT_EQ(automorphism_count(PartStructure(3)), 6u);
  EXPECT_THROW(automorphism_count(canonical_gem(4)), CapacityError);
}

TEST(Search, LabeledCanonicalModels) {
  // The three GEM models on three points are the relabelings of the
  // canonical model on two atoms.
  const PartStructure c = canonical_gem(2);
  std::vector<Index> perm{0, 1, 2};
  std::set<std::uint64_t> relabeled;
  do {
    relabeled.insert(encode(Structure(permuted(c, perm))));
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::set<std::uint64_t> models;
  for (const auto& m : filter_models(Signature::kPart, 3, gem_p())) models.insert(encode(m));
  EXPECT_EQ(relabeled, models);
}

TEST(Search, CheckTheoryReport) {
  const CheckReport ok = check_theory(canonical_gem(2), gem_p());
  EXPECT_TRUE(ok.all_pass());
  EXPECT_EQ(ok.verdicts.size(), 5u);

  const Structure empty = parse_structure("n=1\nfusion:\n");
  const CheckReport bad = check_theory(empty, gem_f(), {1, ExecOptions{}.capacity, false});
  EXPECT_FALSE(bad.all_pass());
  EXPECT_FALSE(bad.verdicts[0].pass);
  ASSERT_TRUE(bad.verdicts[0].witness);
  EXPECT_TRUE(witness_refutes(empty, gem_f().find("exists_F"), *bad.verdicts[0].witness));
  const std::string json = to_json(bad);
  EXPECT_NE(json.find("\"obligation\": \"exists_F\""), std::string::npos);
  EXPECT_NE(json.find("\"elapsed_ms\": 0"), std::string::npos);
}

TEST(Search, WitnessRefutesRejectsNonWitnesses) {
  const Structure s = parse_structure("n=2\npart: (0,0) (1,1) (0,1) (1,0)\n");
  const NamedFormula antis = gem_p().find("antis_P");
  Assignment a;
  a.individuals["x"] = 0;
  a.individuals["y"] = 0;
  EXPECT_FALSE(witness_refutes(s, antis, a));
  a.individuals["y"] = 1;
  EXPECT_TRUE(witness_refutes(s, antis, a));
  a.individuals["z"] = 1;
  EXPECT_FALSE(witness_refutes(s, antis, a));
}

TEST(Search, CountermodelWithoutWeakSupplementation) {
  SearchBounds b;
  b.max_n_fusion = 2;
  const auto r = find_countermodel(gem_f().without("wsp_F"), gem_f().find("wsp_F"), b);
  ASSERT_TRUE(r.found);
  EXPECT_EQ(r.verdict, "found");
  EXPECT_EQ(format_structure(r.found->structure), "n=2\nfusion: ({0},0) ({1},1) ({0,1},0)\n");
  EXPECT_EQ(to_string(r.found->witness), "{x=1, y=0}");
  // All of n=0 and n=1, then codes 0..100 at n=2.
  EXPECT_EQ(r.candidates, 1u + 4u + 101u);
}

TEST(Search, NoCountermodelToLemma) {
  SearchBounds b;
  b.max_n_fusion = 2;
  const auto r = find_countermodel(gem_f(), lemma_suite().find("FUIx"), b);
  EXPECT_FALSE(r.found);
  EXPECT_EQ(r.verdict, "exhausted bounds");
  EXPECT_EQ(r.candidates, 1u + 4u + 256u);
}

TEST(Search, RandomCountermodelIsSeeded) {
  SearchBounds b;
  b.max_n_fusion = 2;
  b.random_samples = 200;
  b.seed = 42;
  const Theory base = gem_f().without("wsp_F");
  const NamedFormula target = gem_f().find("wsp_F");
  const auto r1 = find_countermodel(base, target, b, Strategy::kRandom);
  const auto r2 = find_countermodel(base, target, b, Strategy::kRandom);
  ASSERT_TRUE(r1.found);
  EXPECT_EQ(to_json(r1, "b", "t", b), to_json(r2, "b", "t", b));
  b.random_samples = 0;
  EXPECT_EQ(find_countermodel(base, target, b, Strategy::kRandom).verdict, "sample budget spent");
}

TEST(Search, EquivalenceSmallBounds) {
  SearchBounds b;
  b.max_n_part = 3;
  b.max_n_fusion = 2;
  const ExecOptions quiet{1, ExecOptions{}.capacity, false};
  const EquivalenceReport r = verify_equivalence(b, quiet);
  EXPECT_TRUE(r.ok());
  ASSERT_EQ(r.sizes.size(), 4u);
  EXPECT_EQ(r.sizes[3].part_models, 3u);
  EXPECT_EQ(r.sizes[3].round_trips_a, 3u);
  EXPECT_FALSE(r.sizes[3].fusion_checked);
  EXPECT_EQ(r.sizes[2].bijection, true);
  EXPECT_EQ(to_json(r), to_json(verify_equivalence(b, {3, ExecOptions{}.capacity, false})));

  b.max_n_part = 0;
  b.max_n_fusion = 0;
  EXPECT_TRUE(verify_equivalence(b, quiet).ok());
}

TEST(Search, LemmaSelection) {
  SearchBounds b;
  b.max_n_part = 3;
  b.max_n_fusion = 2;
  const LemmaReport r = check_lemmas(lemma_suite(), b, {canonical_gem(2)}, {"FUIx", "WSP"});
  ASSERT_EQ(r.rows.size(), 2u);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.rows[0].name, "FUIx");
  EXPECT_EQ(r.rows[0].models_checked, 1u + 1u + 0u + 1u);
  EXPECT_EQ(r.rows[1].models_checked, 1u + 1u + 0u + 3u + 1u);
  EXPECT_THROW(check_lemmas(lemma_suite(), b, {}, {"nope"}), LookupError);
}

TEST(Search, ExtraModelsAreValidated) {
  SearchBounds b;
  b.max_n_part = 1;
  b.max_n_fusion = 1;
  const LemmaReport r = check_lemmas(lemma_suite(), b, {PartStructure(2)}, {"WSP"});
  EXPECT_FALSE(r.ok());
  EXPECT_EQ(r.setup_failures.size(), 1u);
}

}  // namespace
}  // namespace gem
