#include "gem/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <numeric>
#include <random>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "gem/derived.hpp"
#include "gem/errors.hpp"

namespace gem {

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t elapsed_ms(Clock::time_point start, const ExecOptions& opts) {
  if (!opts.timing) return 0;
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
}

// Runs fn(i) for i in [0, chunks) on up to `workers` threads. The first
// exception thrown by any chunk is rethrown.
template <typename Fn>
void run_chunks(std::size_t chunks, std::size_t workers, Fn&& fn) {
  workers = std::max<std::size_t>(1, std::min(workers, chunks));
  if (workers == 1) {
    for (std::size_t i = 0; i < chunks; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < chunks; i = next++) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

std::size_t default_chunks(std::uint64_t count) {
  return static_cast<std::size_t>(std::min<std::uint64_t>(count, 64));
}

}  // namespace

// --- enumeration -----------------------------------------------------------

std::size_t encoding_bits(Signature kind, std::size_t n) {
  if (n > kMaxDomain) throw CapacityError("domain size exceeds limit");
  return kind == Signature::kPart ? n * n : n * (std::size_t{1} << n);
}

std::uint64_t candidate_count(Signature kind, std::size_t n, std::uint64_t capacity) {
  const std::size_t bits = encoding_bits(kind, n);
  if (bits >= 63 || (std::uint64_t{1} << bits) > capacity) {
    throw CapacityError(std::string(to_string(kind)) + " structures of size " +
                        std::to_string(n) + " number 2^" + std::to_string(bits) +
                        ", above the capacity of " + std::to_string(capacity) + " candidates");
  }
  return std::uint64_t{1} << bits;
}

Structure decode(Signature kind, std::size_t n, std::uint64_t code) {
  if (kind == Signature::kPart) {
    std::vector<Mask> rows(n);
    const Mask row_mask = full_mask(n);
    for (std::size_t x = 0; x < n; ++x) rows[x] = static_cast<Mask>(code >> (x * n)) & row_mask;
    return PartStructure::from_rows(std::move(rows));
  }
  std::vector<Mask> table(std::size_t{1} << n);
  const Mask row_mask = full_mask(n);
  for (std::size_t zz = 0; zz < table.size(); ++zz) {
    table[zz] = static_cast<Mask>(code >> (zz * n)) & row_mask;
  }
  return FusionStructure::from_table(n, std::move(table));
}

std::uint64_t encode(const Structure& s) {
  std::uint64_t code = 0;
  if (const auto* ps = std::get_if<PartStructure>(&s)) {
    const std::size_t n = ps->size();
    if (n * n > 64) throw CapacityError("structure too large to encode");
    for (std::size_t x = 0; x < n; ++x) code |= std::uint64_t{ps->up(x)} << (x * n);
    return code;
  }
  const auto& fs = std::get<FusionStructure>(s);
  const std::size_t n = fs.size();
  if (n * (std::size_t{1} << n) > 64) throw CapacityError("structure too large to encode");
  for (std::size_t zz = 0; zz < fs.table().size(); ++zz) {
    code |= std::uint64_t{fs.table()[zz]} << (zz * n);
  }
  return code;
}

std::vector<CodeRange> partition(Signature kind, std::size_t n, std::size_t parts,
                                 std::uint64_t capacity) {
  const std::uint64_t count = candidate_count(kind, n, capacity);
  parts = static_cast<std::size_t>(std::clamp<std::uint64_t>(parts, 1, count));
  std::vector<CodeRange> out;
  for (std::size_t i = 0; i < parts; ++i) {
    out.push_back({count / parts * i + std::min<std::uint64_t>(i, count % parts),
                   count / parts * (i + 1) + std::min<std::uint64_t>(i + 1, count % parts)});
  }
  return out;
}

void for_each_structure(Signature kind, std::size_t n, CodeRange range,
                        const std::function<void(std::uint64_t, const Structure&)>& fn) {
  for (std::uint64_t code = range.begin; code < range.end; ++code) fn(code, decode(kind, n, code));
}

std::vector<Structure> enumerate_structures(Signature kind, std::size_t n,
                                            std::uint64_t capacity) {
  const std::uint64_t count = candidate_count(kind, n, capacity);
  std::vector<Structure> out;
  out.reserve(count);
  for_each_structure(kind, n, {0, count},
                     [&](std::uint64_t, const Structure& s) { out.push_back(s); });
  return out;
}

// --- model filtering -------------------------------------------------------

ModelFilter::ModelFilter(const Theory& theory, std::size_t n) {
  std::vector<std::pair<double, std::size_t>> order;
  for (std::size_t i = 0; i < theory.obligations.size(); ++i) {
    order.emplace_back(estimated_cost(theory.obligations[i].sentence, n), i);
  }
  std::stable_sort(order.begin(), order.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [cost, i] : order) checkers_.emplace_back(theory.obligations[i]);
}

bool ModelFilter::accepts(const Interpretation& in) const {
  return std::all_of(checkers_.begin(), checkers_.end(),
                     [&](const SentenceChecker& c) { return c.holds(in); });
}

bool ModelFilter::accepts(const Structure& s) const {
  Interpretation in(s);
  return accepts(in);
}

std::vector<Structure> filter_models(Signature kind, std::size_t n, const Theory& theory,
                                     const ExecOptions& opts) {
  const std::uint64_t count = candidate_count(kind, n, opts.capacity);
  const ModelFilter filter(theory, n);
  const auto ranges = partition(kind, n, default_chunks(count), opts.capacity);
  std::vector<std::vector<Structure>> found(ranges.size());
  run_chunks(ranges.size(), opts.workers, [&](std::size_t i) {
    for (std::uint64_t code = ranges[i].begin; code < ranges[i].end; ++code) {
      Structure s = decode(kind, n, code);
      if (filter.accepts(s)) found[i].push_back(std::move(s));
    }
  });
  std::vector<Structure> out;
  for (auto& chunk : found) {
    for (auto& s : chunk) out.push_back(std::move(s));
  }
  return out;
}

std::uint64_t count_models(Signature kind, const Theory& theory, std::size_t n,
                           const ExecOptions& opts) {
  return filter_models(kind, n, theory, opts).size();
}

// --- single-structure checks ------------------------------------------------

bool CheckReport::all_pass() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; });
}

bool witness_refutes(const Structure& s, const NamedFormula& nf, const Assignment& witness) {
  const QuantifierBlock block = outer_block(nf.sentence);
  if (block.kind != Formula::Kind::kForall) return false;
  if (witness.individuals.size() + witness.pluralities.size() != block.variables.size()) {
    return false;
  }
  try {
    return !eval(s, block.matrix, witness);
  } catch (const EvalError&) {
    return false;
  }
}

namespace {

Assignment confirmed_witness(const Structure& s, const NamedFormula& nf, Assignment w) {
  if (!witness_refutes(s, nf, w)) {
    throw std::logic_error("witness " + to_string(w) + " for '" + nf.name +
                           "' does not re-evaluate to false");
  }
  return w;
}

}  // namespace

CheckReport check_theory(const Structure& s, const Theory& t, const ExecOptions& opts) {
  const auto start = Clock::now();
  CheckReport report;
  report.theory = t.name;
  report.kind = signature(s);
  report.n = domain_size(s);
  report.structure = format_structure(s);
  Interpretation in(s);
  for (const auto& nf : t.obligations) {
    const EvalOutcome outcome = SentenceChecker(nf).check(in);
    Verdict v{nf.name, outcome.value, std::nullopt};
    if (!outcome.value && outcome.witness) {
      v.witness = confirmed_witness(s, nf, *outcome.witness);
    }
    report.verdicts.push_back(std::move(v));
  }
  report.elapsed_ms = elapsed_ms(start, opts);
  return report;
}

// --- countermodels ---------------------------------------------------------

namespace {

std::optional<Countermodel> as_countermodel(const Structure& s, const SentenceChecker& target) {
  Interpretation in(s);
  const EvalOutcome outcome = target.check(in);
  if (outcome.value) return std::nullopt;
  Countermodel cm{s, {}};
  if (outcome.witness) cm.witness = confirmed_witness(s, target.obligation(), *outcome.witness);
  // Never trust the search path: the base must hold and the target must fail
  // under a fresh evaluation.
  if (eval(s, target.obligation().sentence)) {
    throw std::logic_error("countermodel does not falsify '" + target.obligation().name + "'");
  }
  return cm;
}

}  // namespace

CountermodelResult find_countermodel(const Theory& base, const NamedFormula& target,
                                     const SearchBounds& bounds, Strategy strategy,
                                     const ExecOptions& opts) {
  const Signature kind = base.signature.value_or(target.side.value_or(Signature::kPart));
  const std::size_t max_n = kind == Signature::kPart ? bounds.max_n_part : bounds.max_n_fusion;
  const SentenceChecker target_checker(target);
  CountermodelResult result;

  auto confirm = [&](const Structure& s) -> std::optional<Countermodel> {
    auto cm = as_countermodel(s, target_checker);
    if (cm) {
      for (const auto& nf : base.obligations) {
        if (!eval(s, nf.sentence)) {
          throw std::logic_error("countermodel violates base obligation '" + nf.name + "'");
        }
      }
    }
    return cm;
  };

  for (std::size_t n = 0; n <= max_n; ++n) {
    const std::uint64_t count = candidate_count(kind, n, opts.capacity);
    const ModelFilter filter(base, n);
    if (strategy == Strategy::kExhaustive) {
      const auto ranges = partition(kind, n, default_chunks(count), opts.capacity);
      std::vector<std::optional<std::uint64_t>> hits(ranges.size());
      std::atomic<std::size_t> best{ranges.size()};
      run_chunks(ranges.size(), opts.workers, [&](std::size_t i) {
        if (i > best.load()) return;
        for (std::uint64_t code = ranges[i].begin; code < ranges[i].end; ++code) {
          const Structure s = decode(kind, n, code);
          Interpretation in(s);
          if (!target_checker.holds(in) && filter.accepts(in)) {
            hits[i] = code;
            std::size_t cur = best.load();
            while (i < cur && !best.compare_exchange_weak(cur, i)) {
            }
            return;
          }
        }
      });
      for (std::size_t i = 0; i < hits.size(); ++i) {
        if (hits[i]) {
          result.candidates += *hits[i] + 1;
          result.found = confirm(decode(kind, n, *hits[i]));
          result.verdict = "found";
          return result;
        }
      }
      result.candidates += count;
    } else {
      std::seed_seq seq{static_cast<std::uint32_t>(bounds.seed),
                        static_cast<std::uint32_t>(bounds.seed >> 32),
                        static_cast<std::uint32_t>(n)};
      std::mt19937_64 rng(seq);
      const std::size_t bits = encoding_bits(kind, n);
      const std::uint64_t mask = bits == 0 ? 0 : (~std::uint64_t{0} >> (64 - bits));
      for (std::uint64_t i = 0; i < bounds.random_samples; ++i) {
        const std::uint64_t code = rng() & mask;
        ++result.candidates;
        const Structure s = decode(kind, n, code);
        Interpretation in(s);
        if (!target_checker.holds(in) && filter.accepts(in)) {
          result.found = confirm(s);
          result.verdict = "found";
          return result;
        }
      }
    }
  }
  result.verdict = strategy == Strategy::kExhaustive ? "exhausted bounds" : "sample budget spent";
  return result;
}

// --- equivalence -----------------------------------------------------------

namespace {

// Checks every obligation of `t` on `s`, appending confirmed failures.
bool check_all(const Structure& s, const std::vector<SentenceChecker>& checkers,
               const std::string& prefix, std::vector<Failure>& out) {
  Interpretation in(s);
  bool ok = true;
  for (const auto& c : checkers) {
    const EvalOutcome outcome = c.check(in);
    if (outcome.value) continue;
    ok = false;
    Failure f{prefix + c.obligation().name, format_structure(s), {}, "obligation fails"};
    if (outcome.witness) f.witness = confirmed_witness(s, c.obligation(), *outcome.witness);
    out.push_back(std::move(f));
  }
  return ok;
}

std::vector<SentenceChecker> checkers_for(const std::vector<NamedFormula>& obligations) {
  return {obligations.begin(), obligations.end()};
}

}  // namespace

EquivalenceReport verify_equivalence(const SearchBounds& bounds, const ExecOptions& opts) {
  const auto start = Clock::now();
  EquivalenceReport report;
  report.seed = bounds.seed;
  const Theory f_theory = gem_f();
  const Theory p_theory = gem_p();
  const Theory lemmas = lemma_suite();
  const auto f_checkers = checkers_for(f_theory.obligations);
  const auto p_checkers = checkers_for(p_theory.obligations);
  const auto def_checkers = checkers_for({lemmas.find("defPF"), lemmas.find("defUF")});

  const std::size_t max_n = std::max(bounds.max_n_part, bounds.max_n_fusion);
  for (std::size_t n = 0; n <= max_n; ++n) {
    SizeTally tally;
    tally.n = n;
    std::vector<std::uint64_t> images;
    std::vector<std::uint64_t> fusion_codes;

    if (n <= bounds.max_n_part) {
      tally.part_checked = true;
      tally.part_candidates = candidate_count(Signature::kPart, n, opts.capacity);
      const auto models = filter_models(Signature::kPart, n, p_theory, opts);
      tally.part_models = models.size();
      for (const auto& m : models) {
        const auto& ps = std::get<PartStructure>(m);
        const Structure induced = induced_fusion(ps);
        bool ok = check_all(induced, f_checkers, "gem_f/", report.violations);
        ok = check_all(m, def_checkers, "", report.violations) && ok;
        const auto& fs = std::get<FusionStructure>(induced);
        if (induced_part(fs) == ps) {
          ++tally.round_trips_a;
        } else {
          ok = false;
          report.violations.push_back(
              {"round trip A", format_structure(m), {}, "induced_part(induced_fusion(M)) != M"});
        }
        for (Mask zz = 0; zz <= full_mask(n); ++zz) {
          if (components(m, Plurality(zz)) != components(induced, Plurality(zz))) {
            ok = false;
            report.violations.push_back({"defUF pointwise", format_structure(m), {},
                                         "U" + to_string(Plurality(zz)) + " differs"});
            break;
          }
        }
        if (ok) ++tally.fsubp_passes;
        images.push_back(encode(induced));
      }
    }

    if (n <= bounds.max_n_fusion) {
      tally.fusion_checked = true;
      tally.fusion_candidates = candidate_count(Signature::kFusion, n, opts.capacity);
      const auto models = filter_models(Signature::kFusion, n, f_theory, opts);
      tally.fusion_models = models.size();
      for (const auto& m : models) {
        const auto& fs = std::get<FusionStructure>(m);
        if (fs.has_empty_fusions()) ++tally.empty_fusion_models;
        const Structure induced = induced_part(fs);
        if (check_all(induced, p_checkers, "gem_p/", report.violations)) ++tally.psubf_passes;
        if (induced_fusion(std::get<PartStructure>(induced)) == fs) {
          ++tally.round_trips_b;
        } else {
          report.violations.push_back(
              {"round trip B", format_structure(m), {}, "induced_fusion(induced_part(N)) != N"});
        }
        fusion_codes.push_back(encode(m));
      }
    }

    if (tally.part_checked && tally.fusion_checked) {
      std::vector<std::uint64_t> sorted = images;
      std::sort(sorted.begin(), sorted.end());
      const bool injective = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
      tally.bijection = injective && sorted == fusion_codes;
      if (!*tally.bijection) {
        report.violations.push_back({"bijection", "n=" + std::to_string(n), {},
                                     "induced fusions of GEM_P models differ from GEM_F models"});
      }
    }
    report.sizes.push_back(tally);
  }
  report.elapsed_ms = elapsed_ms(start, opts);
  return report;
}

// --- lemmas ----------------------------------------------------------------

bool LemmaReport::ok() const {
  return setup_failures.empty() &&
         std::all_of(rows.begin(), rows.end(), [](const LemmaRow& r) { return r.pass(); });
}

LemmaReport check_lemmas(const Theory& lemmas, const SearchBounds& bounds,
                         const std::vector<PartStructure>& extra_part_models,
                         const std::vector<std::string>& only, const ExecOptions& opts) {
  const auto start = Clock::now();
  LemmaReport report;
  report.seed = bounds.seed;
  for (const auto& name : only) lemmas.find(name);

  std::vector<const NamedFormula*> selected;
  bool need_part = false, need_fusion = false;
  for (const auto& nf : lemmas.obligations) {
    if (!only.empty() && std::find(only.begin(), only.end(), nf.name) == only.end()) continue;
    selected.push_back(&nf);
    (nf.side.value_or(Signature::kPart) == Signature::kPart ? need_part : need_fusion) = true;
  }

  std::vector<Structure> part_pool, fusion_pool;
  if (need_part) {
    const Theory t = gem_p();
    for (std::size_t n = 0; n <= bounds.max_n_part; ++n) {
      for (auto& s : filter_models(Signature::kPart, n, t, opts)) part_pool.push_back(std::move(s));
    }
    const ModelFilter filter(t, 0);
    for (const auto& ps : extra_part_models) {
      if (filter.accepts(Structure(ps))) {
        part_pool.emplace_back(ps);
      } else {
        report.setup_failures.push_back(
            {"gem_p", format_structure(ps), {}, "extra model is not a model of gem_p"});
      }
    }
  }
  if (need_fusion) {
    const Theory t = gem_f();
    for (std::size_t n = 0; n <= bounds.max_n_fusion; ++n) {
      for (auto& s : filter_models(Signature::kFusion, n, t, opts)) {
        fusion_pool.push_back(std::move(s));
      }
    }
    const ModelFilter filter(t, 0);
    for (const auto& ps : extra_part_models) {
      Structure fs = induced_fusion(ps);
      if (filter.accepts(fs)) {
        fusion_pool.push_back(std::move(fs));
      } else {
        report.setup_failures.push_back({"gem_f", format_structure(fs), {},
                                         "induced fusion of extra model is not a model of gem_f"});
      }
    }
  }

  for (const NamedFormula* nf : selected) {
    const auto row_start = Clock::now();
    LemmaRow row;
    row.name = nf->name;
    row.side = nf->side.value_or(Signature::kPart);
    row.anchor = nf->anchor;
    const auto& pool = row.side == Signature::kPart ? part_pool : fusion_pool;
    const SentenceChecker checker(*nf);
    std::vector<std::vector<Failure>> failures(pool.size());
    run_chunks(pool.size(), opts.workers, [&](std::size_t i) {
      Interpretation in(pool[i]);
      const EvalOutcome outcome = checker.check(in);
      if (outcome.value) return;
      Failure f{nf->name, format_structure(pool[i]), {}, "lemma fails"};
      if (outcome.witness) f.witness = confirmed_witness(pool[i], *nf, *outcome.witness);
      failures[i].push_back(std::move(f));
    });
    for (auto& fs : failures) {
      for (auto& f : fs) row.failures.push_back(std::move(f));
    }
    row.models_checked = pool.size();
    row.elapsed_ms = elapsed_ms(row_start, opts);
    report.rows.push_back(std::move(row));
  }
  report.elapsed_ms = elapsed_ms(start, opts);
  return report;
}

// --- automorphisms ---------------------------------------------------------

std::uint64_t automorphism_count(const PartStructure& ps) {
  const std::size_t n = ps.size();
  if (n > 8) throw CapacityError("automorphism_count needs n <= 8");
  std::vector<Index> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t count = 0;
  do {
    bool preserves = true;
    for (Index x = 0; x < n && preserves; ++x) {
      for (Index y = 0; y < n; ++y) {
        if (ps.part(x, y) != ps.part(perm[x], perm[y])) {
          preserves = false;
          break;
        }
      }
    }
    if (preserves) ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

// --- JSON ------------------------------------------------------------------

namespace {

using json = nlohmann::ordered_json;

json witness_json(const Assignment& a) {
  json out = json::object();
  for (const auto& [name, x] : a.individuals) out[name] = x;
  for (const auto& [name, zz] : a.pluralities) out[name] = zz.members();
  return out;
}

json failure_json(const Failure& f) {
  return {{"obligation", f.obligation},
          {"witness", witness_json(f.witness)},
          {"structure", f.structure},
          {"detail", f.detail}};
}

json failures_json(const std::vector<Failure>& fs) {
  json out = json::array();
  for (const auto& f : fs) out.push_back(failure_json(f));
  return out;
}

}  // namespace

std::string to_json(const CheckReport& r) {
  json failures = json::array();
  json verdicts = json::array();
  for (const auto& v : r.verdicts) {
    verdicts.push_back({{"obligation", v.obligation}, {"pass", v.pass}});
    if (!v.pass) {
      failures.push_back({{"obligation", v.obligation},
                          {"witness", v.witness ? witness_json(*v.witness) : json::object()}});
    }
  }
  json out = {{"theory", r.theory},
              {"kind", std::string(to_string(r.kind))},
              {"n", r.n},
              {"candidates", 1},
              {"models", r.all_pass() ? 1 : 0},
              {"failures", failures},
              {"seed", 0},
              {"elapsed_ms", r.elapsed_ms},
              {"structure", r.structure},
              {"verdicts", verdicts}};
  return out.dump(2) + "\n";
}

std::string to_json(const EquivalenceReport& r) {
  json sizes = json::array();
  for (const auto& t : r.sizes) {
    json entry = {{"n", t.n}};
    if (t.part_checked) {
      entry["part"] = {{"theory", "gem_p"},
                       {"kind", "part"},
                       {"n", t.n},
                       {"candidates", t.part_candidates},
                       {"models", t.part_models},
                       {"fsubp_passes", t.fsubp_passes},
                       {"round_trips_a", t.round_trips_a}};
    }
    if (t.fusion_checked) {
      entry["fusion"] = {{"theory", "gem_f"},
                         {"kind", "fusion"},
                         {"n", t.n},
                         {"candidates", t.fusion_candidates},
                         {"models", t.fusion_models},
                         {"psubf_passes", t.psubf_passes},
                         {"round_trips_b", t.round_trips_b},
                         {"models_with_empty_fusion", t.empty_fusion_models}};
    }
    entry["bijection"] = t.bijection ? json(*t.bijection) : json(nullptr);
    sizes.push_back(entry);
  }
  json out = {{"theory", "gem_f+dfP_F = gem_p+dfU_P"},
              {"kind", "part+fusion"},
              {"sizes", sizes},
              {"failures", failures_json(r.violations)},
              {"seed", r.seed},
              {"elapsed_ms", r.elapsed_ms}};
  return out.dump(2) + "\n";
}

std::string to_json(const LemmaReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"obligation", row.name},
                    {"side", row.side == Signature::kPart ? "gem_p" : "gem_f"},
                    {"anchor", row.anchor},
                    {"models", row.models_checked},
                    {"pass", row.pass()},
                    {"failures", failures_json(row.failures)},
                    {"elapsed_ms", row.elapsed_ms}});
  }
  json out = {{"theory", "lemmas"},
              {"rows", rows},
              {"failures", failures_json(r.setup_failures)},
              {"seed", r.seed},
              {"elapsed_ms", r.elapsed_ms}};
  return out.dump(2) + "\n";
}

std::string to_json(const CountermodelResult& r, const std::string& base,
                    const std::string& target, const SearchBounds& bounds) {
  json out = {{"theory", base},
              {"target", target},
              {"verdict", r.verdict},
              {"candidates", r.candidates},
              {"max_n_part", bounds.max_n_part},
              {"max_n_fusion", bounds.max_n_fusion}};
  if (r.found) {
    out["kind"] = std::string(to_string(signature(r.found->structure)));
    out["n"] = domain_size(r.found->structure);
    out["structure"] = format_structure(r.found->structure);
    out["witness"] = witness_json(r.found->witness);
  } else {
    out["structure"] = nullptr;
  }
  out["seed"] = bounds.seed;
  return out.dump(2) + "\n";
}

std::string models_json(const std::string& theory, Signature kind, std::size_t n,
                        std::uint64_t candidates, const std::vector<Structure>& models,
                        std::uint64_t seed, std::int64_t elapsed) {
  json structures = json::array();
  for (const auto& s : models) structures.push_back(format_structure(s));
  json out = {{"theory", theory},
              {"kind", std::string(to_string(kind))},
              {"n", n},
              {"candidates", candidates},
              {"models", models.size()},
              {"failures", json::array()},
              {"seed", seed},
              {"elapsed_ms", elapsed},
              {"structures", structures}};
  return out.dump(2) + "\n";
}

}  // namespace gem
