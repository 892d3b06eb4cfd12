// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Long-running (minutes) because every search is exhaustive.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gem/search.hpp"
#include "oracle.hpp"
#include "random_formula.hpp"

namespace {

using namespace gem;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

struct Result {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

// Witnesses produced anywhere in criteria 1-5, re-evaluated through the
// semantics module.
struct WitnessAudit {
  std::uint64_t audited = 0;
  std::uint64_t unsound = 0;

  void add(const Structure& s, const NamedFormula& nf, const Assignment& w) {
    ++audited;
    if (!witness_refutes(s, nf, w)) ++unsound;
  }
  void add(const std::vector<Failure>& failures, const Theory& t) {
    for (const auto& f : failures) {
      std::string name = f.obligation;
      if (auto slash = name.find('/'); slash != std::string::npos) name = name.substr(slash + 1);
      if (!t.contains(name)) continue;
      if (f.witness.individuals.empty() && f.witness.pluralities.empty()) continue;
      add(parse_structure(f.structure), t.find(name), f.witness);
    }
  }
};

const std::vector<std::uint64_t> kPartCounts{1, 0, 3, 0};  // n = 1..4

// --- criterion 5 runs first: its native pass also counts fusion models ----

struct OracleRun {
  std::uint64_t structures = 0;
  std::uint64_t comparisons = 0;
  std::uint64_t disagreements = 0;
  std::vector<std::uint64_t> native_fusion_models;  // n = 0..3
  std::string first_disagreement;
};

void compare(const Structure& s, const Interpretation& in,
             const std::vector<SentenceChecker>& checkers, const std::vector<bool>& native,
             OracleRun& run, WitnessAudit& audit, std::vector<std::uint32_t>& raw,
             std::uint64_t code) {
  ++run.structures;
  for (std::size_t i = 0; i < checkers.size(); ++i) {
    const bool ast = checkers[i].check_raw(in, raw);
    ++run.comparisons;
    if (ast != native[i]) {
      if (run.disagreements++ == 0) {
        run.first_disagreement = checkers[i].obligation().name + " on code " +
                                 std::to_string(code) + ": " + format_structure(s);
      }
    }
    if (!ast && checkers[i].universal_block()) {
      ++audit.audited;
      if (!checkers[i].refutes(in, raw)) ++audit.unsound;
      // Every 4096th witness also goes through the generic evaluator.
      if ((audit.audited & 4095) == 0) {
        audit.add(s, checkers[i].obligation(), checkers[i].to_assignment(raw));
      }
    }
  }
}

OracleRun oracle_equivalence(WitnessAudit& audit) {
  OracleRun run;
  const Theory p = gem_p(), f = gem_f();
  const std::vector<SentenceChecker> p_checkers(p.obligations.begin(), p.obligations.end());
  const std::vector<SentenceChecker> f_checkers(f.obligations.begin(), f.obligations.end());
  std::vector<std::uint32_t> raw;

  for (int n = 0; n <= 3; ++n) {
    const std::uint64_t count = candidate_count(Signature::kPart, n);
    for (std::uint64_t code = 0; code < count; ++code) {
      const Structure s = decode(Signature::kPart, n, code);
      const Interpretation in(s);
      compare(s, in, p_checkers, oracle::gem_p_axioms(oracle::decode_part(n, code)), run, audit,
              raw, code);
    }
  }
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 10000; ++i) {
    const std::uint64_t code = rng() & 0xFFFF;
    const Structure s = decode(Signature::kPart, 4, code);
    const Interpretation in(s);
    compare(s, in, p_checkers, oracle::gem_p_axioms(oracle::decode_part(4, code)), run, audit,
            raw, code);
  }
  for (int n = 0; n <= 3; ++n) {
    std::uint64_t models = 0;
    const std::uint64_t count = candidate_count(Signature::kFusion, n);
    for (std::uint64_t code = 0; code < count; ++code) {
      const Structure s = decode(Signature::kFusion, n, code);
      const Interpretation in(s);
      const auto native = oracle::gem_f_axioms(oracle::decode_fusion(n, code));
      models += oracle::all_of(native);
      compare(s, in, f_checkers, native, run, audit, raw, code);
    }
    run.native_fusion_models.push_back(models);
  }
  return run;
}

// --- criteria ----------------------------------------------------------------

Result criterion_1(WitnessAudit& audit) {
  Result r;
  SearchBounds b;
  b.max_n_part = 4;
  b.max_n_fusion = 0;
  const auto start = Clock::now();
  const EquivalenceReport eq = verify_equivalence(b, {4, ExecOptions{}.capacity, true});
  const double secs = seconds_since(start);
  audit.add(eq.violations, gem_f());
  audit.add(eq.violations, gem_p());
  audit.add(eq.violations, lemma_suite());

  std::vector<std::uint64_t> counts;
  for (const auto& t : eq.sizes) {
    if (t.n == 0) continue;
    counts.push_back(t.part_models);
    r.require(t.fsubp_passes == t.part_models, "induced fusion check at n=" + std::to_string(t.n));
    r.require(t.round_trips_a == t.part_models, "round trip A at n=" + std::to_string(t.n));
  }
  r.require(counts == kPartCounts, "GEM_P counts");
  r.require(eq.violations.empty(), std::to_string(eq.violations.size()) + " violations");
  r.require(secs <= 120, "runtime");

  // Independent oracle: the native enumeration must find the same models,
  // and for each the native induced fusion must satisfy native GEM_F with
  // the round trip the identity.
  std::vector<std::uint64_t> native_counts;
  bool same_models = true, native_ok = true;
  for (int n = 1; n <= 4; ++n) {
    std::vector<std::uint64_t> native_codes;
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << (n * n)); ++code) {
      const auto p = oracle::decode_part(n, code);
      if (!oracle::all_of(oracle::gem_p_axioms(p))) continue;
      native_codes.push_back(code);
      const auto fz = oracle::induced_fusion(p);
      native_ok = native_ok && oracle::all_of(oracle::gem_f_axioms(fz)) &&
                  oracle::induced_part(fz).part == p.part;
    }
    native_counts.push_back(native_codes.size());
    std::vector<std::uint64_t> lib_codes;
    for (const auto& m : filter_models(Signature::kPart, n, gem_p())) lib_codes.push_back(encode(m));
    same_models = same_models && lib_codes == native_codes;
  }
  r.require(native_counts == kPartCounts, "native GEM_P counts");
  r.require(same_models, "library and native model sets agree");
  r.require(native_ok, "native induced fusion / round trip");

  r.detail << "GEM_P models n=1..4: ";
  for (auto c : counts) r.detail << c << " ";
  r.detail << "| violations " << eq.violations.size() << " | " << secs << " s";
  return r;
}

Result criterion_2(const OracleRun& oracle_run, WitnessAudit& audit) {
  Result r;
  SearchBounds b;
  b.max_n_part = 3;
  b.max_n_fusion = 3;
  const auto start = Clock::now();
  const EquivalenceReport eq = verify_equivalence(b, {4, ExecOptions{}.capacity, true});
  const double secs = seconds_since(start);
  audit.add(eq.violations, gem_f());
  audit.add(eq.violations, gem_p());

  std::vector<std::uint64_t> counts;
  for (const auto& t : eq.sizes) {
    if (t.n == 0) continue;
    counts.push_back(t.fusion_models);
    r.require(t.psubf_passes == t.fusion_models, "induced part check at n=" + std::to_string(t.n));
    r.require(t.round_trips_b == t.fusion_models, "round trip B at n=" + std::to_string(t.n));
    r.require(t.bijection.value_or(false), "bijection at n=" + std::to_string(t.n));
  }
  const std::vector<std::uint64_t> expected(kPartCounts.begin(), kPartCounts.begin() + 3);
  r.require(counts == expected, "GEM_F counts equal GEM_P counts");
  const std::vector<std::uint64_t> native(oracle_run.native_fusion_models.begin() + 1,
                                          oracle_run.native_fusion_models.end());
  r.require(native == expected, "native GEM_F counts");
  r.require(eq.violations.empty(), std::to_string(eq.violations.size()) + " violations");
  r.require(secs <= 600, "runtime");

  r.detail << "GEM_F models n=1..3: ";
  for (auto c : counts) r.detail << c << " ";
  r.detail << "(native ";
  for (auto c : native) r.detail << c << " ";
  r.detail << ") | violations " << eq.violations.size() << " | " << secs << " s";
  return r;
}

Result criterion_3(WitnessAudit& audit) {
  Result r;
  const auto start = Clock::now();
  const LemmaReport rep =
      check_lemmas(lemma_suite(), SearchBounds{}, {canonical_gem(3)}, {}, {4});
  const double secs = seconds_since(start);
  for (const auto& row : rep.rows) audit.add(row.failures, lemma_suite());

  const std::vector<std::string> f_side{"FIx",     "P_F2",  "ref_P",   "antis_P", "trans_P",
                                        "fun_F",   "cltosum", "FUIx",  "sumtocl"};
  const std::vector<std::string> p_side{"WSP",    "F_P=Mub", "id_F",  "ext_F", "comp_F",
                                        "wsp_F",  "approx_F", "defPF", "defUF"};
  // Models per side: sizes 0..3 (fusion) or 0..4 (part) plus canonical_gem(3).
  const std::uint64_t expected_models = 1 + 1 + 0 + 3 + 1;
  std::size_t failures = 0;
  std::int64_t ext_ms = -1;
  auto find_row = [&](const std::string& name) -> const LemmaRow* {
    for (const auto& row : rep.rows) {
      if (row.name == name) return &row;
    }
    return nullptr;
  };
  for (const auto* side : {&f_side, &p_side}) {
    const Signature sig = side == &f_side ? Signature::kFusion : Signature::kPart;
    for (const auto& name : *side) {
      const LemmaRow* row = find_row(name);
      r.require(row != nullptr, "row " + name + " present");
      if (!row) continue;
      r.require(row->side == sig, name + " side");
      r.require(row->models_checked == expected_models, name + " model count");
      failures += row->failures.size();
      if (name == "ext_F") ext_ms = row->elapsed_ms;
    }
  }
  for (const auto& row : rep.rows) r.require(row.pass(), row.name);
  r.require(rep.setup_failures.empty(), "extra model accepted by both theories");
  r.require(ext_ms >= 0 && ext_ms <= 300000, "ext_F within 5 minutes");
  r.detail << rep.rows.size() << " obligations x " << expected_models << " models | failures "
           << failures << " | ext_F " << ext_ms << " ms | " << secs << " s";
  return r;
}

Result criterion_4() {
  Result r;
  const Theory order = gem_p();
  const std::vector<NamedFormula> po{order.find("ref_P"), order.find("antis_P"),
                                     order.find("trans_P")};
  const Theory pp = pp_axioms();
  std::uint64_t discrepancies = 0, orders = 0;
  for (std::uint64_t code = 0; code < 512; ++code) {
    const Structure s = decode(Signature::kPart, 3, code);
    const bool lhs = std::all_of(po.begin(), po.end(),
                                 [&](const NamedFormula& nf) { return eval(s, nf.sentence); });
    const bool rhs = std::all_of(pp.obligations.begin(), pp.obligations.end(),
                                 [&](const NamedFormula& nf) { return eval(s, nf.sentence); });
    const auto native = oracle::decode_part(3, code);
    const bool native_lhs = oracle::ref_p(native) && oracle::antis_p(native) &&
                            oracle::trans_p(native);
    const bool native_rhs = oracle::strict_order_with_reflexive_closure(native);
    if (lhs != rhs || lhs != native_lhs || rhs != native_rhs) ++discrepancies;
    orders += lhs;
  }
  r.require(discrepancies == 0, "presentations agree");
  r.require(orders == 19, "19 partial orders on 3 points");
  r.detail << "512 relations | partial orders " << orders << " | discrepancies " << discrepancies;
  return r;
}

Result criterion_5(const OracleRun& run, double secs) {
  Result r;
  r.require(run.disagreements == 0, "first: " + run.first_disagreement);
  r.detail << run.structures << " structures, " << run.comparisons << " axiom verdicts | "
           << "disagreements " << run.disagreements << " | " << secs << " s";
  return r;
}

Result criterion_6() {
  Result r;
  std::uint64_t checked = 0, broken = 0;
  for (const auto& name : builtin_theory_names()) {
    for (const auto& nf : builtin_theory(name).obligations) {
      ++checked;
      const std::string text = print(nf.sentence);
      if (!(parse(text) == nf.sentence) || print(parse(text)) != text) ++broken;
    }
  }
  const std::uint64_t registry = checked;
  testing_support::FormulaGen gen(7);
  for (int i = 0; i < 1000; ++i) {
    const Formula f = gen.formula(6);
    ++checked;
    const std::string text = print(f);
    if (!(parse(text) == f) || print(parse(text)) != text) ++broken;
  }
  r.require(broken == 0, std::to_string(broken) + " round trips broken");
  r.detail << registry << " registry + 1000 random formulas | broken " << broken;
  return r;
}

Result criterion_7() {
  Result r;
  const auto aut2 = automorphism_count(canonical_gem(2));
  const auto aut3 = automorphism_count(canonical_gem(3));
  r.require(aut2 == 2, "aut(canonical 2) = 2");
  r.require(aut3 == 6, "aut(canonical 3) = 6");
  const auto labeled2 = count_models(Signature::kPart, gem_p(), 3);
  r.require(labeled2 == 6 / aut2, "3!/aut = models at n=3");

  // k = 3: distinct relabelings of the canonical model are 7!/aut, and
  // every one is a model.
  const PartStructure c3 = canonical_gem(3);
  std::vector<Index> perm(7);
  std::iota(perm.begin(), perm.end(), 0);
  std::set<std::uint64_t> relabeled;
  do {
    relabeled.insert(encode(Structure(permuted(c3, perm))));
  } while (std::next_permutation(perm.begin(), perm.end()));
  const ModelFilter filter(gem_p(), 7);
  bool all_models = true;
  for (auto code : relabeled) all_models = all_models && filter.accepts(decode(Signature::kPart, 7, code));
  r.require(relabeled.size() == 5040 / aut3, "7!/aut relabelings");
  r.require(all_models, "relabelings are models");
  r.detail << "aut(k=2) " << aut2 << ", aut(k=3) " << aut3 << " | labeled k=2 " << labeled2
           << " | relabelings k=3 " << relabeled.size();
  return r;
}

Result criterion_8() {
  Result r;
  std::vector<std::string> reports;
  for (std::size_t workers : {1, 4}) {
    const ExecOptions opts{workers, ExecOptions{}.capacity, false};
    SearchBounds part_side;
    part_side.max_n_fusion = 0;
    SearchBounds fusion_side;
    fusion_side.max_n_part = 0;
    reports.push_back(to_json(verify_equivalence(part_side, opts)) +
                      to_json(verify_equivalence(fusion_side, opts)) +
                      to_json(check_lemmas(lemma_suite(), SearchBounds{}, {canonical_gem(3)}, {},
                                           opts)));
  }
  r.require(reports[0] == reports[1], "workers 1 vs 4");
  r.detail << "workers 1 and 4, seed 0 | " << reports[0].size() << " bytes "
           << (reports[0] == reports[1] ? "identical" : "differ");
  return r;
}

Result criterion_9(const WitnessAudit& audit) {
  Result r;
  r.require(audit.unsound == 0, "unsound witnesses");
  r.require(audit.audited > 0, "some witnesses audited");
  r.detail << "audited " << audit.audited << " | unsound " << audit.unsound;
  return r;
}

}  // namespace

int main() {
  WitnessAudit audit;
  const auto oracle_start = Clock::now();
  const OracleRun oracle_run = oracle_equivalence(audit);
  const double oracle_secs = seconds_since(oracle_start);

  const std::vector<std::pair<std::string, Result>> lines = [&] {
    std::vector<std::pair<std::string, Result>> out;
    out.emplace_back("equivalence, part side", criterion_1(audit));
    out.emplace_back("equivalence, fusion side", criterion_2(oracle_run, audit));
    out.emplace_back("lemma suite", criterion_3(audit));
    out.emplace_back("proper-part presentation", criterion_4());
    out.emplace_back("evaluator vs native checkers", criterion_5(oracle_run, oracle_secs));
    out.emplace_back("parser round trip", criterion_6());
    out.emplace_back("automorphisms", criterion_7());
    out.emplace_back("determinism", criterion_8());
    out.emplace_back("witness soundness", criterion_9(audit));
    return out;
  }();

  bool ok = true;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto& [title, result] = lines[i];
    std::cout << (result.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << " (" << title
              << "): " << result.detail.str() << "\n";
    ok = ok && result.pass;
  }
  return ok ? 0 : 1;
}
