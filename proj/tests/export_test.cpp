#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "gem/errors.hpp"
#include "gem/export.hpp"
#include "gem/search.hpp"

namespace gem {
namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

bool contains(const std::vector<std::string>& v, const std::string& x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

TEST(Export, GoldenFIx) {
  const std::string text = emit_obligation("FIx", gem_f(), lemma_suite().find("FIx"));
  EXPECT_EQ(text, slurp(std::string(GOLDEN_DIR) + "/FIx.p"));
  EXPECT_EQ(text, emit_obligation(lemma_obligation("FIx")));

  // Six axioms of the theory, four comprehension instances.
  auto count = [&](const std::string& prefix) {
    std::size_t n = 0;
    for (auto pos = text.find(prefix); pos != std::string::npos; pos = text.find(prefix, pos + 1)) ++n;
    return n;
  };
  EXPECT_EQ(count("fof(ax_"), 6u);
  EXPECT_EQ(count("fof(ci_"), 4u);
  EXPECT_EQ(count(", conjecture,"), 1u);
}

TEST(Export, ByteStable) {
  const auto a = emit_all_lemmas();
  const auto b = emit_all_lemmas();
  EXPECT_EQ(a, b);
}

TEST(Export, OneFilePerLemma) {
  const auto files = emit_all_lemmas();
  const Theory lemmas = lemma_suite();
  ASSERT_EQ(files.size(), lemmas.obligations.size());
  for (std::size_t i = 0; i < files.size(); ++i) {
    EXPECT_EQ(files[i].first, problem_file_name(lemmas.obligations[i].name));
    EXPECT_NE(files[i].second.find("% Problem   : " + lemmas.obligations[i].name + "\n"),
              std::string::npos);
  }
  EXPECT_EQ(problem_file_name("F_P=Mub"), "F_P_Mub.p");
  EXPECT_THROW(lemma_obligation("nope"), LookupError);
}

TEST(Export, EncodeSingletonInstance) {
  EXPECT_EQ(encode(definitions().find("I").sentence),
            "(! [X_x] : (ind(X_x) => (! [X_y] : (ind(X_y) => (mem(X_x, sing(X_y)) <=> (X_x = "
            "X_y))))))");
}

TEST(Export, EncodeReflexivityIsOneLine) {
  const std::string text = encode(gem_p().find("ref_P").sentence);
  EXPECT_EQ(text, "(! [X_x] : (ind(X_x) => p(X_x, X_x)))");
}

TEST(Export, EncodeRestrictedQuantifiers) {
  EXPECT_EQ(encode(parse("exists VV sub U(ZZ) . F(VV, x)")),
            "(? [XX_VV] : ((plur(XX_VV) & sub(XX_VV, cpn(XX_ZZ))) & f(XX_VV, X_x)))");
  EXPECT_EQ(encode(parse("forall y in ZZ + I(x) . not O(x, y)")),
            "(! [X_y] : ((ind(X_y) & mem(X_y, union(XX_ZZ, sing(X_x)))) => ~ o(X_x, X_y)))");
}

TEST(Export, ComponentsInstanceFollowsSide) {
  const Obligation f_side = make_obligation("comp_F", gem_f(), gem_f().find("comp_F"));
  EXPECT_TRUE(contains(f_side.instances, "U_F"));
  EXPECT_FALSE(contains(f_side.instances, "zzstar"));

  const Obligation p_side = lemma_obligation("comp_F");
  EXPECT_TRUE(contains(p_side.instances, "U_P"));
  EXPECT_TRUE(contains(p_side.instances, "zzstar"));
  EXPECT_FALSE(contains(p_side.instances, "U_F"));
}

TEST(Export, PartSideDefinesFusion) {
  const Obligation ob = lemma_obligation("ext_F");
  std::vector<std::string> defs;
  for (const auto& d : ob.definitions) defs.push_back(d.name);
  EXPECT_TRUE(contains(defs, "dfF_P"));
  EXPECT_TRUE(contains(defs, "dfO"));  // used by dfF_P
  EXPECT_FALSE(contains(defs, "dfP_F"));
  EXPECT_NE(emit_obligation(ob).find("fof(def_dff_p, axiom,"), std::string::npos);
}

TEST(Export, FusionSideDefinesPart) {
  const Obligation ob = lemma_obligation("P_F2");
  std::vector<std::string> defs;
  for (const auto& d : ob.definitions) defs.push_back(d.name);
  EXPECT_TRUE(contains(defs, "dfP_F"));
  EXPECT_FALSE(contains(defs, "dfF_P"));
  EXPECT_EQ(ob.axioms.size(), 6u);
}

TEST(Export, EveryTermFormerHasItsInstance) {
  const std::vector<std::pair<std::string, std::string>> formers{
      {"sing(", "fof(ci_i,"},       {"union(", "fof(ci_union,"},
      {"inter(", "fof(ci_intersection,"}, {"zzstar(", "fof(ci_zzstar,"}};
  for (const auto& [file, text] : emit_all_lemmas()) {
    for (const auto& [symbol, instance] : formers) {
      if (text.find(symbol) != std::string::npos) {
        EXPECT_NE(text.find(instance), std::string::npos) << file << " uses " << symbol;
      }
    }
    if (text.find("cpn(") != std::string::npos) {
      EXPECT_TRUE(text.find("fof(ci_u_f,") != std::string::npos ||
                  text.find("fof(ci_u_p,") != std::string::npos)
          << file;
    }
    EXPECT_NE(text.find(", conjecture,"), std::string::npos) << file;
  }
}

TEST(Export, NoSmallCountermodels) {
  // Necessary for provability: the conjecture holds in every model of the
  // axioms up to size 2. Definitions hold by construction in the evaluator.
  SearchBounds b;
  b.max_n_part = 2;
  b.max_n_fusion = 2;
  for (const auto& nf : lemma_suite().obligations) {
    const Obligation ob = lemma_obligation(nf.name);
    Theory base{"axioms", ob.side, ob.axioms};
    for (const auto& d : ob.definitions) base.obligations.push_back(d);
    const auto r = find_countermodel(base, ob.conjecture, b);
    EXPECT_FALSE(r.found) << nf.name;
  }
}

}  // namespace
}  // namespace gem
