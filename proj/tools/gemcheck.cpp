// gemcheck: batch verification runs over finite mereological structures.
//
// Exit codes: 0 success, 1 an obligation failed, 2 usage or parse error,
// 3 a search exceeded its capacity.
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gem/errors.hpp"
#include "gem/export.hpp"
#include "gem/search.hpp"

namespace {

using namespace gem;

enum Exit { kOk = 0, kFailure = 1, kUsage = 2, kCapacity = 3 };

struct Common {
  std::size_t workers = 4;
  std::uint64_t seed = 0;
  std::string format = "text";
  bool no_timing = false;
  std::uint64_t capacity = ExecOptions{}.capacity;

  ExecOptions exec() const { return {workers, capacity, !no_timing}; }
  bool json() const { return format == "json"; }
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--workers", c.workers, "Worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", c.seed, "Seed recorded in reports and used by random search");
  cmd->add_option("--format", c.format, "Report format")
      ->check(CLI::IsMember({"json", "text"}));
  cmd->add_flag("--no-timing", c.no_timing, "Report elapsed_ms as 0 (byte-stable output)");
  cmd->add_option("--capacity", c.capacity, "Largest enumeration allowed, in candidates");
}

std::string witness_text(const Assignment& a) {
  return a.individuals.empty() && a.pluralities.empty() ? "-" : to_string(a);
}

int run_check(const std::string& file, const std::string& theory_name, const Common& c) {
  const Structure s = read_structure_file(file);
  const Theory t = load_theory(theory_name);
  const CheckReport r = check_theory(s, t, c.exec());
  if (c.json()) {
    std::cout << to_json(r);
  } else {
    std::cout << t.name << " on " << to_string(r.kind) << " structure, n=" << r.n << "\n";
    for (const auto& v : r.verdicts) {
      std::cout << (v.pass ? "  pass " : "  FAIL ") << v.obligation;
      if (v.witness) std::cout << "  witness " << witness_text(*v.witness);
      std::cout << "\n";
    }
  }
  return r.all_pass() ? kOk : kFailure;
}

void print_failures(const std::vector<Failure>& fs) {
  for (const auto& f : fs) {
    std::cout << "  violation " << f.obligation << ": " << f.detail << "  witness "
              << witness_text(f.witness) << "\n    " << f.structure << "\n";
  }
}

int run_equiv(const SearchBounds& b, const Common& c) {
  const EquivalenceReport r = verify_equivalence(b, c.exec());
  if (c.json()) {
    std::cout << to_json(r);
  } else {
    std::cout << "n  gem_p models/candidates  gem_f models/candidates  round trips A/B  bijection\n";
    for (const auto& t : r.sizes) {
      std::cout << t.n << "  ";
      if (t.part_checked) {
        std::cout << t.part_models << "/" << t.part_candidates;
      } else {
        std::cout << "-";
      }
      std::cout << "  ";
      if (t.fusion_checked) {
        std::cout << t.fusion_models << "/" << t.fusion_candidates;
      } else {
        std::cout << "-";
      }
      std::cout << "  " << t.round_trips_a << "/" << t.round_trips_b << "  "
                << (t.bijection ? (*t.bijection ? "yes" : "NO") : "-") << "\n";
    }
    print_failures(r.violations);
    std::cout << (r.ok() ? "equivalence holds within bounds\n" : "equivalence VIOLATED\n");
  }
  return r.ok() ? kOk : kFailure;
}

int run_lemmas(const SearchBounds& b, const std::vector<std::string>& only, std::size_t canonical,
               const Common& c) {
  std::vector<PartStructure> extra;
  if (canonical > 0) extra.push_back(canonical_gem(canonical));
  const LemmaReport r = check_lemmas(lemma_suite(), b, extra, only, c.exec());
  if (c.json()) {
    std::cout << to_json(r);
  } else {
    for (const auto& row : r.rows) {
      std::cout << (row.pass() ? "pass " : "FAIL ") << row.name << "  ("
                << (row.side == Signature::kPart ? "gem_p" : "gem_f") << ", "
                << row.models_checked << " models)\n";
      print_failures(row.failures);
    }
    print_failures(r.setup_failures);
  }
  return r.ok() ? kOk : kFailure;
}

int run_models(const std::string& kind_name, std::size_t n, const std::string& theory_name,
               const Common& c) {
  const Signature kind = kind_name == "part" ? Signature::kPart : Signature::kFusion;
  const Theory t = load_theory(theory_name);
  const auto start = std::chrono::steady_clock::now();
  const std::uint64_t candidates = candidate_count(kind, n, c.capacity);
  const auto models = filter_models(kind, n, t, c.exec());
  const auto ms = c.no_timing ? 0
                              : std::chrono::duration_cast<std::chrono::milliseconds>(
                                    std::chrono::steady_clock::now() - start)
                                    .count();
  if (c.json()) {
    std::cout << models_json(t.name, kind, n, candidates, models, c.seed, ms);
  } else {
    std::cout << models.size() << " models of " << t.name << " among " << candidates << " "
              << kind_name << " structures of size " << n << "\n";
    for (const auto& m : models) std::cout << "\n" << format_structure(m);
  }
  return kOk;
}

const NamedFormula& find_target(const std::string& name, const Theory& base,
                                const std::vector<Theory>& others) {
  if (base.contains(name)) return base.find(name);
  for (const auto& t : others) {
    if (t.contains(name)) return t.find(name);
  }
  throw LookupError("unknown target '" + name + "'");
}

int run_countermodel(const std::string& theory_name, const std::string& drop,
                     const std::string& target_name, std::size_t max_n,
                     const std::string& strategy, std::uint64_t samples, const Common& c) {
  const Theory full = load_theory(theory_name);
  const Theory base = drop.empty() ? full : full.without(drop);
  const std::vector<Theory> others{lemma_suite(), definitions()};
  const NamedFormula target = find_target(target_name, full, others);
  SearchBounds b;
  b.max_n_part = b.max_n_fusion = max_n;
  b.random_samples = samples;
  b.seed = c.seed;
  const auto r = find_countermodel(base, target, b,
                                   strategy == "random" ? Strategy::kRandom : Strategy::kExhaustive,
                                   c.exec());
  const std::string base_name = drop.empty() ? full.name : full.name + " - " + drop;
  if (c.json()) {
    std::cout << to_json(r, base_name, target.name, b);
  } else {
    std::cout << "countermodel to " << target.name << " over " << base_name << ": " << r.verdict
              << " (" << r.candidates << " candidates)\n";
    if (r.found) {
      std::cout << "witness " << witness_text(r.found->witness) << "\n"
                << format_structure(r.found->structure);
    }
  }
  // A countermodel is a finding, not an error.
  return kOk;
}

int run_export(const std::vector<std::string>& lemmas, bool all, const std::string& out) {
  std::vector<std::pair<std::string, std::string>> files;
  if (all) {
    files = emit_all_lemmas();
  } else {
    for (const auto& name : lemmas) {
      files.emplace_back(problem_file_name(name), emit_obligation(lemma_obligation(name)));
    }
  }
  if (out.empty()) {
    for (const auto& [name, text] : files) std::cout << text;
    return kOk;
  }
  std::filesystem::create_directories(out);
  for (const auto& [name, text] : files) {
    const auto path = std::filesystem::path(out) / name;
    std::ofstream f(path, std::ios::binary);
    f << text;
    if (!f) throw std::runtime_error("cannot write " + path.string());
    std::cout << path.string() << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-model checks for mereology with primitive fusion or primitive part"};
  app.require_subcommand(1);
  Common common;
  SearchBounds bounds;

  std::string structure_file, theory_name = "gem_p";
  auto* check = app.add_subcommand("check", "Check a structure file against a theory");
  check->add_option("structure", structure_file, "Structure file")->required();
  check->add_option("--theory", theory_name, "Builtin theory name or .thy file");
  add_common(check, common);

  auto* equiv = app.add_subcommand("equiv", "Verify the definitional equivalence within bounds");
  equiv->add_option("--max-part", bounds.max_n_part, "Largest part-structure size");
  equiv->add_option("--max-fusion", bounds.max_n_fusion, "Largest fusion-structure size");
  add_common(equiv, common);

  std::vector<std::string> only;
  std::size_t canonical = 3;
  auto* lemmas = app.add_subcommand("lemmas", "Check the lemma registry on all small models");
  lemmas->add_option("--max-part", bounds.max_n_part, "Largest part-structure size");
  lemmas->add_option("--max-fusion", bounds.max_n_fusion, "Largest fusion-structure size");
  lemmas->add_option("--lemma", only, "Only these lemmas");
  lemmas->add_option("--canonical", canonical,
                     "Also check on the canonical model over k atoms (0: none)");
  add_common(lemmas, common);

  std::string kind = "part";
  std::size_t n = 0;
  auto* models = app.add_subcommand("models", "List the models of a theory of one size");
  models->add_option("--kind", kind, "Structure kind")->check(CLI::IsMember({"part", "fusion"}));
  models->add_option("--n", n, "Domain size")->required();
  models->add_option("--theory", theory_name, "Builtin theory name or .thy file");
  add_common(models, common);

  std::string drop, target, strategy = "exhaustive";
  std::size_t max_n = 2;
  std::uint64_t samples = SearchBounds{}.random_samples;
  auto* cm = app.add_subcommand("countermodel", "Search for a countermodel to a target");
  cm->add_option("--theory", theory_name, "Base theory");
  cm->add_option("--drop", drop, "Axiom removed from the base theory");
  cm->add_option("--target", target, "Sentence to refute")->required();
  cm->add_option("--max-n", max_n, "Largest domain size searched");
  cm->add_option("--strategy", strategy, "Search strategy")
      ->check(CLI::IsMember({"exhaustive", "random"}));
  cm->add_option("--samples", samples, "Samples per size for random search");
  add_common(cm, common);

  std::vector<std::string> export_lemmas;
  bool export_all = false;
  std::string out;
  auto* exp = app.add_subcommand("export", "Write lemmas as TPTP problem files");
  exp->add_option("--lemma", export_lemmas, "Lemma to export");
  exp->add_flag("--all", export_all, "Export every registry lemma");
  exp->add_option("--out", out, "Output directory (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*check) return run_check(structure_file, theory_name, common);
    bounds.seed = common.seed;
    if (*equiv) return run_equiv(bounds, common);
    if (*lemmas) return run_lemmas(bounds, only, canonical, common);
    if (*models) return run_models(kind, n, theory_name, common);
    if (*cm) return run_countermodel(theory_name, drop, target, max_n, strategy, samples, common);
    if (*exp) {
      if (!export_all && export_lemmas.empty()) {
        std::cerr << "export: give --lemma NAME or --all\n";
        return kUsage;
      }
      return run_export(export_lemmas, export_all, out);
    }
  } catch (const CapacityError& e) {
    std::cerr << "capacity exceeded: " << e.what() << "\n";
    return kCapacity;
  } catch (const SyntaxError& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  } catch (const StructureError& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  } catch (const LookupError& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
