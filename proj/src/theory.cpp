#include "gem/theory.hpp"

#include <algorithm>
#include <filesystem>

#include "gem/errors.hpp"

namespace gem {

namespace {

Term pv(const char* name) { return Term::var(name); }
Term sing(const char* x) { return Term::singleton(x); }
Term cup(Term a, Term b) { return Term::unite(std::move(a), std::move(b)); }
Term cap(Term a, Term b) { return Term::intersect(std::move(a), std::move(b)); }
Term cpn(Term a) { return Term::components(std::move(a)); }

Formula all(const char* v, Formula body) { return Formula::forall(v, std::move(body)); }
Formula ex(const char* v, Formula body) { return Formula::exists(v, std::move(body)); }
Formula all_in(const char* v, Term range, Formula body) {
  return Formula::forall(v, Formula::Bound::kIn, std::move(range), std::move(body));
}
Formula ex_in(const char* v, Term range, Formula body) {
  return Formula::exists(v, Formula::Bound::kIn, std::move(range), std::move(body));
}
Formula ex_sub(const char* v, Term range, Formula body) {
  return Formula::exists(v, Formula::Bound::kSub, std::move(range), std::move(body));
}

Formula F(Term t, const std::string& x) { return Formula::fusion(std::move(t), x); }
Formula P(const std::string& x, const std::string& y) { return Formula::part(x, y); }
Formula PP(const char* x, const char* y) { return Formula::proper_part(x, y); }
Formula O(const char* x, const char* y) { return Formula::overlap(x, y); }
Formula same(const char* x, const char* y) { return Formula::equal(x, y); }
Formula in(const char* x, Term t) { return Formula::member(x, std::move(t)); }
Formula neg(Formula f) { return Formula::negate(std::move(f)); }
Formula conj(std::vector<Formula> fs) { return conj_all(fs); }
Formula disj(Formula a, Formula b) { return Formula::disj(std::move(a), std::move(b)); }
Formula imp(Formula a, Formula b) { return Formula::implies(std::move(a), std::move(b)); }
Formula iff(Formula a, Formula b) { return Formula::iff(std::move(a), std::move(b)); }

NamedFormula named(std::string name, Formula f, std::string anchor,
                   std::optional<Signature> side = std::nullopt) {
  return {std::move(name), std::move(f), std::move(anchor), side};
}

// Shared sentences -----------------------------------------------------------

Formula exists_fusion() {
  return all("ZZ", imp(ex("x", in("x", pv("ZZ"))), ex("y", F(pv("ZZ"), "y"))));
}
Formula approx_fusion() {
  return all("XX", all("YY", all("z", imp(conj({F(pv("XX"), "z"),
                                                Formula::plural_eq(pv("XX"), pv("YY"))}),
                                          F(pv("YY"), "z")))));
}
Formula ext_fusion() {
  return all("ZZ", all("YY", all("UU", all("x", all("v",
      imp(conj({F(pv("ZZ"), "x"), F(pv("YY"), "x"), F(cup(pv("UU"), pv("ZZ")), "v")}),
          F(cup(pv("UU"), pv("YY")), "v")))))));
}
Formula id_fusion() {
  return all("x", all("y", imp(F(sing("y"), "x"), same("x", "y"))));
}
// The inner existential's variable is renamed apart from the plural ZZ.
Formula comp_fusion() {
  return all("ZZ", all("x", all("y",
      imp(conj({F(cup(pv("ZZ"), sing("x")), "y"), F(pv("ZZ"), "y")}),
          ex_sub("VV", cpn(pv("ZZ")),
                 conj({F(pv("VV"), "x"), ex("z", in("z", pv("VV")))}))))));
}
Formula wsp_fusion() {
  return all("x", all("y",
      imp(conj({F(cup(sing("x"), sing("y")), "y"), neg(same("x", "y"))}),
          ex_in("z", cpn(sing("y")),
                neg(ex("u", F(cap(cpn(sing("x")), cpn(sing("z"))), "u")))))));
}
Formula fun_fusion() {
  return all("ZZ", all("x", all("y",
      imp(conj({F(pv("ZZ"), "x"), F(pv("ZZ"), "y")}), same("x", "y")))));
}
Formula ref_part() { return all("x", P("x", "x")); }
Formula antis_part() {
  return all("x", all("y", imp(conj({P("x", "y"), P("y", "x")}), same("x", "y"))));
}
Formula trans_part() {
  return all("x", all("y", all("z", imp(conj({P("x", "y"), P("y", "z")}), P("x", "z")))));
}
// Right-hand side of the part-side definition of F, with O as an atom.
Formula sum_condition(const char* zz, const char* x) {
  return conj({all_in("y", pv(zz), P("y", x)),
               all("y", imp(P("y", x), ex_in("v", pv(zz), O("v", "y"))))});
}

}  // namespace

Formula fusion_in_parts(const Term& zz, const std::string& x) {
  for (const auto& name : free_variables(zz)) {
    if (name == "w" || name == "v" || name == "u") {
      throw std::invalid_argument("fusion_in_parts: bound name clash with '" + name + "'");
    }
  }
  if (x == "w" || x == "v" || x == "u") {
    throw std::invalid_argument("fusion_in_parts: bound name clash with '" + x + "'");
  }
  Formula overlap = ex("u", conj({P("u", "v"), P("u", "w")}));
  return conj({Formula::forall("w", Formula::Bound::kIn, zz, P("w", x)),
               all("w", imp(P("w", x), Formula::exists("v", Formula::Bound::kIn, zz, overlap)))});
}

const NamedFormula& Theory::find(std::string_view obligation) const {
  for (const auto& nf : obligations) {
    if (nf.name == obligation) return nf;
  }
  throw LookupError("theory '" + name + "' has no obligation '" + std::string(obligation) + "'");
}

bool Theory::contains(std::string_view obligation) const {
  return std::any_of(obligations.begin(), obligations.end(),
                     [&](const NamedFormula& nf) { return nf.name == obligation; });
}

Theory Theory::without(std::string_view obligation) const {
  find(obligation);
  Theory out{name + "-" + std::string(obligation), signature, {}};
  for (const auto& nf : obligations) {
    if (nf.name != obligation) out.obligations.push_back(nf);
  }
  return out;
}

Theory gem_f() {
  return {"gem_f",
          Signature::kFusion,
          {
              named("exists_F", exists_fusion(), "exists_F: exists x (x in zz) -> exists y F_zz y"),
              named("approx_F", approx_fusion(), "approx_F: F_xx z and xx = yy -> F_yy z"),
              named("id_F", id_fusion(), "id_F: F_{I y} x -> x = y"),
              named("ext_F", ext_fusion(),
                    "ext_F: F_zz x and F_yy x and F_{uu+zz} v -> F_{uu+yy} v"),
              named("comp_F", comp_fusion(),
                    "comp_F: F_{zz+I x} y and F_zz y -> exists vv <= U zz (F_vv x and vv nonempty)"),
              named("wsp_F", wsp_fusion(),
                    "wsp_F: F_{I x+I y} y and x != y -> exists z in U I y, no fusion of "
                    "U I x & U I z"),
          }};
}

Theory gem_p() {
  const Formula exists_parts =
      all("ZZ", imp(ex("x", in("x", pv("ZZ"))), ex("y", fusion_in_parts(pv("ZZ"), "y"))));
  const Formula fun_parts = all("ZZ", all("x", all("y",
      imp(conj({fusion_in_parts(pv("ZZ"), "x"), fusion_in_parts(pv("ZZ"), "y")}),
          same("x", "y")))));
  return {"gem_p",
          Signature::kPart,
          {
              named("ref_P", ref_part(), "ref_P: P xx"),
              named("antis_P", antis_part(), "antis_P: P xy and P yx -> x = y"),
              named("trans_P", trans_part(), "trans_P: P xy and P yz -> P xz"),
              named("exists_F", exists_parts,
                    "exists_F with F expanded by dfF_P: exists x (x in zz) -> exists y F_zz y"),
              named("fun_F", fun_parts,
                    "fun_F with F expanded by dfF_P: F_zz x and F_zz y -> x = y"),
          }};
}

Theory pp_axioms() {
  return {"pp",
          Signature::kPart,
          {
              named("as_PP", all("x", all("y", imp(PP("x", "y"), neg(PP("y", "x"))))),
                    "as_PP: PP xy -> not PP yx"),
              named("trans_PP",
                    all("x", all("y", all("z", imp(conj({PP("x", "y"), PP("y", "z")}),
                                                   PP("x", "z"))))),
                    "trans_PP: PP xy and PP yz -> PP xz"),
              named("dfP_PP",
                    all("x", all("y", iff(P("x", "y"), disj(PP("x", "y"), same("x", "y"))))),
                    "dfP_PP: P xy <-> PP xy or x = y"),
          }};
}

Theory lemma_suite() {
  constexpr auto kF = Signature::kFusion;
  constexpr auto kP = Signature::kPart;
  Theory t{"lemmas", std::nullopt, {}};
  auto& o = t.obligations;

  // Hold in every model of gem_f, with P defined from F.
  o.push_back(named("FIx", all("x", F(sing("x"), "x")), "lemma FIx: F_{I x} x", kF));
  o.push_back(named("P_F2",
                    all("x", all("y", iff(P("x", "y"), F(cup(sing("x"), sing("y")), "y")))),
                    "lemma P_F2: P xy <-> F_{I x+I y} y", kF));
  o.push_back(named("ref_P", ref_part(), "lemma lemmartrant: ref_P", kF));
  o.push_back(named("antis_P", antis_part(), "lemma lemmartrant: antis_P", kF));
  o.push_back(named("trans_P", trans_part(), "lemma lemmartrant: trans_P", kF));
  o.push_back(named("fun_F", fun_fusion(), "lemma: uniqueness of fusion, fun_F", kF));
  o.push_back(named("cltosum",
                    all("ZZ", all("x", imp(F(pv("ZZ"), "x"), sum_condition("ZZ", "x")))),
                    "lemma cltosum: F_zz x -> every member is part of x and every part of x "
                    "overlaps a member",
                    kF));
  o.push_back(named("FUIx", all("x", F(cpn(sing("x")), "x")), "lemma FUIx: F_{U I x} x", kF));
  o.push_back(named("sumtocl",
                    all("ZZ", all("x", imp(sum_condition("ZZ", "x"), F(pv("ZZ"), "x")))),
                    "lemma sumtocl: converse of cltosum", kF));
  o.push_back(named("defUP",
                    all("ZZ", all("x", iff(in("x", cpn(pv("ZZ"))),
                                           ex_in("y", pv("ZZ"), P("x", "y"))))),
                    "dfU_P is a thesis of GEM_F + dfP_F", kF));

  // Hold in every model of gem_p, with F, O, PP and U defined from P.
  o.push_back(named("WSP",
                    all("x", all("y", imp(PP("x", "y"),
                                          ex("z", conj({PP("z", "y"), neg(O("z", "x"))}))))),
                    "lemma WSP: PP xy -> exists z (PP zy and not O zx)", kP));
  o.push_back(named("F_P=Mub",
                    all("ZZ", all("x", iff(F(pv("ZZ"), "x"),
                        conj({ex("y", in("y", pv("ZZ"))),
                              all_in("y", pv("ZZ"), P("y", "x")),
                              all("y", imp(all_in("v", pv("ZZ"), P("v", "y")), P("x", "y")))})))),
                    "lemma F_P=Mub: F_zz x <-> Mub_zz x (dfMub expanded)", kP));
  o.push_back(named("id_F", id_fusion(), "lemma lid: id_F in GEM_P", kP));
  o.push_back(named("ext_F", ext_fusion(), "lemma: fusion extensionality ext_F in GEM_P", kP));
  o.push_back(named("comp_F", comp_fusion(), "lemma LMScomp: comp_F in GEM_P + dfU_P", kP));
  o.push_back(named("zzstar",
                    all("ZZ", all("x", all("y",
                        imp(conj({F(cup(pv("ZZ"), sing("x")), "y"), F(pv("ZZ"), "y")}),
                            ex("SS", conj({all("u", iff(in("u", pv("SS")),
                                                        conj({P("u", "x"),
                                                              in("u", cpn(pv("ZZ")))}))),
                                           F(pv("SS"), "x")})))))),
                    "lemma LMScomp: the plurality u in zz* <-> P ux and u in U zz fuses to x",
                    kP));
  o.push_back(named("wsp_F", wsp_fusion(), "lemma WSP+tosep: wsp_F in GEM_P + dfU_P", kP));
  o.push_back(named("approx_F", approx_fusion(), "lemma lemextF: approx_F in GEM_P", kP));
  o.push_back(named("defPF",
                    all("x", all("y", iff(P("x", "y"),
                                          ex("ZZ", conj({F(pv("ZZ"), "y"), in("x", pv("ZZ"))}))))),
                    "lemma defPF: dfP_F is a thesis of GEM_P", kP));
  o.push_back(named("defUF",
                    all("ZZ", all("x", iff(in("x", cpn(pv("ZZ"))),
                        ex_in("z", pv("ZZ"),
                              ex("YY", conj({F(pv("YY"), "z"), in("x", pv("YY"))})))))),
                    "lemma defUF: dfU_F is a thesis of GEM_P + dfU_P", kP));
  return t;
}

Theory definitions() {
  constexpr auto kF = Signature::kFusion;
  constexpr auto kP = Signature::kPart;
  return {"definitions",
          std::nullopt,
          {
              named("I", all("x", all("y", iff(in("x", sing("y")), same("x", "y")))),
                    "comprehension instance I: x in I y <-> x = y"),
              named("union",
                    all("YY", all("ZZ", all("x", iff(in("x", cup(pv("YY"), pv("ZZ"))),
                                                     disj(in("x", pv("YY")),
                                                          in("x", pv("ZZ"))))))),
                    "comprehension instance union: x in yy+zz <-> x in yy or x in zz"),
              named("intersection",
                    all("YY", all("ZZ", all("x", iff(in("x", cap(pv("YY"), pv("ZZ"))),
                                                     conj({in("x", pv("YY")),
                                                           in("x", pv("ZZ"))}))))),
                    "comprehension instance intersection: x in yy&zz <-> x in yy and x in zz"),
              named("sub",
                    all("XX", all("YY", iff(Formula::sub(pv("XX"), pv("YY")),
                                            all("z", imp(in("z", pv("XX")),
                                                         in("z", pv("YY"))))))),
                    "definition: xx sub yy <-> every z in xx is in yy"),
              named("eq",
                    all("XX", all("YY", iff(Formula::plural_eq(pv("XX"), pv("YY")),
                                            conj({Formula::sub(pv("XX"), pv("YY")),
                                                  Formula::sub(pv("YY"), pv("XX"))})))),
                    "definition: xx eq yy <-> xx sub yy and yy sub xx"),
              named("dfU_F",
                    all("ZZ", all("x", iff(in("x", cpn(pv("ZZ"))),
                        ex_in("z", pv("ZZ"),
                              ex("YY", conj({F(pv("YY"), "z"), in("x", pv("YY"))})))))),
                    "dfU_F: x in U zz <-> exists z in zz exists yy (F_yy z and x in yy)", kF),
              named("dfP_F",
                    all("x", all("y", iff(P("x", "y"),
                                          ex("ZZ", conj({F(pv("ZZ"), "y"), in("x", pv("ZZ"))}))))),
                    "dfP_F: P xy <-> exists zz (F_zz y and x in zz)", kF),
              named("dfF_P", all("ZZ", all("x", iff(F(pv("ZZ"), "x"), sum_condition("ZZ", "x")))),
                    "dfF_P: F_zz x <-> every y in zz is part of x and every part of x overlaps "
                    "some member of zz",
                    kP),
              named("dfU_P",
                    all("ZZ", all("x", iff(in("x", cpn(pv("ZZ"))),
                                           ex_in("y", pv("ZZ"), P("x", "y"))))),
                    "dfU_P: x in U zz <-> exists y in zz P xy", kP),
              named("dfO",
                    all("x", all("y", iff(O("x", "y"), ex("z", conj({P("z", "x"),
                                                                      P("z", "y")}))))),
                    "dfO: O xy <-> exists z (P zx and P zy)"),
              named("dfPP_P",
                    all("x", all("y", iff(PP("x", "y"), conj({P("x", "y"),
                                                              neg(same("x", "y"))})))),
                    "dfPP_P: PP xy <-> P xy and x != y"),
          }};
}

std::vector<std::string> builtin_theory_names() {
  return {"gem_f", "gem_p", "pp", "lemmas", "definitions"};
}

Theory builtin_theory(std::string_view name) {
  if (name == "gem_f") return gem_f();
  if (name == "gem_p") return gem_p();
  if (name == "pp") return pp_axioms();
  if (name == "lemmas") return lemma_suite();
  if (name == "definitions") return definitions();
  throw LookupError("unknown theory '" + std::string(name) + "'");
}

Theory load_theory(const std::string& name_or_path) {
  const auto names = builtin_theory_names();
  if (std::find(names.begin(), names.end(), name_or_path) != names.end()) {
    return builtin_theory(name_or_path);
  }
  if (!std::filesystem::exists(name_or_path)) {
    throw LookupError("unknown theory '" + name_or_path + "' (not a builtin, no such file)");
  }
  return {std::filesystem::path(name_or_path).stem().string(), std::nullopt,
          read_theory_file(name_or_path)};
}

Theory theory_for_side(Signature side) { return side == Signature::kFusion ? gem_f() : gem_p(); }

}  // namespace gem
