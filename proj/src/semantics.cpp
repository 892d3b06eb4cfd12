#include "gem/semantics.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "gem/derived.hpp"
#include "gem/errors.hpp"

namespace gem {

std::string to_string(const Assignment& a) {
  std::string out = "{";
  bool first = true;
  for (const auto& [name, x] : a.individuals) {
    out += (first ? "" : ", ") + name + "=" + std::to_string(x);
    first = false;
  }
  for (const auto& [name, zz] : a.pluralities) {
    out += (first ? "" : ", ") + name + "=" + to_string(zz);
    first = false;
  }
  return out + "}";
}

// --- Interpretation --------------------------------------------------------

Interpretation::Interpretation(const Structure& s)
    : structure_(&s), n_(domain_size(s)), signature_(gem::signature(s)) {
  if (const auto* ps = std::get_if<PartStructure>(&s)) {
    for (Index x = 0; x < n_; ++x) {
      for_each_member(ps->up(x), [&](Index y) { down_[y] |= bit(x); });
    }
  } else {
    const auto& fs = std::get<FusionStructure>(s);
    const auto& table = fs.table();
    for (std::size_t zz = 0; zz < table.size(); ++zz) {
      for_each_member(table[zz], [&](Index y) { down_[y] |= static_cast<Mask>(zz); });
    }
    fusion_ = &table;
  }
  for (Index x = 0; x < n_; ++x) {
    for (Index y = 0; y < n_; ++y) {
      if ((down_[x] & down_[y]) != 0) overlap_[x] |= bit(y);
    }
  }
}

void Interpretation::build_fusion_table() const {
  derived_fusion_ = derived::fusion_table(std::span<const Mask>(down_.data(), n_),
                                          std::span<const Mask>(overlap_.data(), n_));
  fusion_ = &derived_fusion_;
}

// --- CompiledFormula -------------------------------------------------------

namespace {

// A block ends where a binder would shadow one of its own variables; the
// shadowing quantifier starts the matrix.
bool binds(const std::vector<const Formula*>& binders, const std::string& v) {
  return std::any_of(binders.begin(), binders.end(), [&](const Formula* b) { return b->var() == v; });
}

}  // namespace

class CompiledFormula::Builder {
 public:
  explicit Builder(CompiledFormula& out) : out_(out) {
    for (const auto& name : out_.free_) scope_.emplace_back(name, new_slot());
  }

  int formula(const Formula& f) {
    using K = Formula::Kind;
    Node n{f.kind()};
    switch (f.kind()) {
      case K::kEqual:
      case K::kPart:
      case K::kProperPart:
      case K::kOverlap:
        n.slot0 = lookup(f.vars()[0]);
        n.slot1 = lookup(f.vars()[1]);
        break;
      case K::kMember:
        n.slot0 = lookup(f.var());
        n.t0 = term(f.terms()[0]);
        break;
      case K::kFusion:
        out_.uses_fusion_ = true;
        n.slot0 = lookup(f.var());
        n.t0 = term(f.terms()[0]);
        break;
      case K::kSub:
      case K::kPluralEq:
        n.t0 = term(f.terms()[0]);
        n.t1 = term(f.terms()[1]);
        break;
      case K::kNot:
        n.c0 = formula(f.body());
        break;
      case K::kAnd:
      case K::kOr:
      case K::kImplies:
      case K::kIff:
        n.c0 = formula(f.lhs());
        n.c1 = formula(f.rhs());
        break;
      case K::kForall:
      case K::kExists:
        return block(f, nullptr);
    }
    out_.nodes_.push_back(n);
    return static_cast<int>(out_.nodes_.size()) - 1;
  }

  // A block of like quantifiers. Each conjunct of the guard ("A and B -> C"
  // under forall, "A and B and C" under exists) is tested as soon as the
  // variables it mentions are bound, so "forall x y . (A(x) -> B(x, y))"
  // runs as "forall x . (A(x) -> forall y . B(x, y))". Binder slots of the
  // block are appended to `record`.
  int block(const Formula& f, std::vector<std::pair<std::string, std::size_t>>* record) {
    using K = Formula::Kind;
    const K kind = f.kind();
    std::vector<const Formula*> binders;
    const Formula* g = &f;
    while (g->kind() == kind && !binds(binders, g->var())) {
      binders.push_back(g);
      g = &g->body();
    }
    std::vector<const Formula*> guards;
    const Formula* last = g;
    if (kind == K::kForall && g->kind() == K::kImplies) {
      flatten_and(g->lhs(), guards);
      last = &g->rhs();
    } else if (kind == K::kExists && g->kind() == K::kAnd) {
      flatten_and(*g, guards);
      last = guards.back();
      guards.pop_back();
    }

    std::vector<std::string> names;
    for (const Formula* b : binders) names.push_back(b->var());
    auto index_of = [&](const std::string& v) {
      return std::find(names.begin(), names.end(), v) - names.begin();
    };
    // Reordering is only safe when no range mentions a block variable (which
    // would be captured once binders move).
    bool reorder = true;
    for (std::size_t i = 0; i < binders.size() && reorder; ++i) {
      if (binders[i]->bound() != Formula::Bound::kNone) {
        for (const auto& v : gem::free_variables(binders[i]->range())) {
          if (static_cast<std::size_t>(index_of(v)) < names.size()) reorder = false;
        }
      }
    }
    std::vector<Item> items;  // outermost first
    if (!reorder) {
      for (const Formula* b : binders) items.push_back({b, false});
      guards.clear();
      last = g;
    } else {
      std::vector<bool> placed(binders.size(), false);
      auto unbound = [&](const Formula* c) {
        std::vector<std::size_t> out;
        for (const auto& v : gem::free_variables(*c)) {
          const auto i = static_cast<std::size_t>(index_of(v));
          if (i < names.size() && !placed[i]) out.push_back(i);
        }
        return out;
      };
      // Next guard: the one needing the fewest new variables, earliest first.
      while (!guards.empty()) {
        auto best = guards.begin();
        for (auto it = guards.begin(); it != guards.end(); ++it) {
          if (unbound(*it).size() < unbound(*best).size()) best = it;
        }
        for (std::size_t i : unbound(*best)) {
          placed[i] = true;
          items.push_back({binders[i], false});
        }
        items.push_back({*best, true});
        guards.erase(best);
      }
      for (std::size_t i = 0; i < binders.size(); ++i) {
        if (!placed[i]) items.push_back({binders[i], false});
      }
    }
    return chain(kind, items, 0, *last, record);
  }

 private:
  struct Item {
    const Formula* f;
    bool guard;
  };

  static void flatten_and(const Formula& f, std::vector<const Formula*>& out) {
    if (f.kind() == Formula::Kind::kAnd) {
      flatten_and(f.lhs(), out);
      flatten_and(f.rhs(), out);
    } else {
      out.push_back(&f);
    }
  }

  int chain(Formula::Kind kind, const std::vector<Item>& items, std::size_t k,
            const Formula& last, std::vector<std::pair<std::string, std::size_t>>* record) {
    using K = Formula::Kind;
    if (k == items.size()) return formula(last);
    const Formula& item = *items[k].f;
    Node n{kind};
    if (items[k].guard) {
      n.kind = kind == K::kForall ? K::kImplies : K::kAnd;
      n.c0 = formula(item);
      n.c1 = chain(kind, items, k + 1, last, record);
    } else {
      n.bound = item.bound();
      n.sort = item.var_sort();
      // One-point rule: when the next guard is "v = t" (or "v eq T") for this
      // binder, bind v to t instead of enumerating it.
      const Formula* eq =
          k + 1 < items.size() && items[k + 1].guard && n.bound == Formula::Bound::kNone
              ? items[k + 1].f
              : nullptr;
      const std::optional<std::size_t> other = eq ? point_side(*eq, item.var()) : std::nullopt;
      if (other) {
        n.point = true;
        if (n.sort == Sort::kIndividual) {
          n.slot1 = lookup(eq->vars()[*other]);
        } else {
          n.t0 = term(eq->terms()[*other]);
        }
      } else if (item.bound() != Formula::Bound::kNone) {
        n.t0 = term(item.range());
      }
      n.slot0 = new_slot();
      if (record) record->emplace_back(item.var(), static_cast<std::size_t>(n.slot0));
      scope_.emplace_back(item.var(), n.slot0);
      n.c0 = chain(kind, items, k + (other ? 2 : 1), last, record);
      scope_.pop_back();
    }
    out_.nodes_.push_back(n);
    return static_cast<int>(out_.nodes_.size()) - 1;
  }

  // For "v = y" / "y = v" or "V eq T" / "T eq V" with v not occurring on the
  // other side: index of the other side.
  static std::optional<std::size_t> point_side(const Formula& f, const std::string& v) {
    if (f.kind() == Formula::Kind::kEqual) {
      const auto& xs = f.vars();
      if (xs[0] == v && xs[1] != v) return 1;
      if (xs[1] == v && xs[0] != v) return 0;
    } else if (f.kind() == Formula::Kind::kPluralEq) {
      for (std::size_t side : {0u, 1u}) {
        const Term& t = f.terms()[side];
        if (t.kind() != Term::Kind::kVar || t.name() != v) continue;
        const auto fv = gem::free_variables(f.terms()[1 - side]);
        if (std::find(fv.begin(), fv.end(), v) == fv.end()) return 1 - side;
      }
    }
    return std::nullopt;
  }

  int term(const Term& t) {
    TermNode n{t.kind()};
    switch (t.kind()) {
      case Term::Kind::kVar:
      case Term::Kind::kSingleton:
        n.slot = lookup(t.name());
        break;
      case Term::Kind::kUnion:
      case Term::Kind::kIntersection:
        n.a = term(t.lhs());
        n.b = term(t.rhs());
        break;
      case Term::Kind::kComponents:
        n.a = term(t.operand());
        break;
    }
    out_.terms_.push_back(n);
    return static_cast<int>(out_.terms_.size()) - 1;
  }

  int lookup(const std::string& name) const {
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it) {
      if (it->first == name) return it->second;
    }
    throw EvalError("unbound variable '" + name + "'");
  }

  int new_slot() {
    if (next_slot_ >= static_cast<int>(kMaxSlots)) {
      throw CapacityError("formula needs more than " + std::to_string(kMaxSlots) + " variables");
    }
    return next_slot_++;
  }

  CompiledFormula& out_;
  std::vector<std::pair<std::string, int>> scope_;
  int next_slot_ = 0;
};

CompiledFormula::CompiledFormula(const Formula& f, std::vector<std::string> free)
    : free_(std::move(free)) {
  Builder b(*this);
  if (!f.is_quantifier()) {
    root_ = b.formula(f);
    return;
  }
  std::vector<std::pair<std::string, std::size_t>> slots;
  root_ = b.block(f, &slots);
  // Report the block in source order whatever order it is evaluated in.
  const Formula* g = &f;
  for (std::size_t i = 0; i < slots.size(); ++i, g = &g->body()) {
    outer_block_.push_back(*std::find_if(slots.begin(), slots.end(),
                                         [&](const auto& e) { return e.first == g->var(); }));
  }
}

Mask CompiledFormula::term(int t, const Interpretation& in, const Values& v) const {
  const TermNode& n = terms_[t];
  switch (n.kind) {
    case Term::Kind::kVar: return v[n.slot];
    case Term::Kind::kSingleton: return bit(v[n.slot]);
    case Term::Kind::kUnion: return term(n.a, in, v) | term(n.b, in, v);
    case Term::Kind::kIntersection: return term(n.a, in, v) & term(n.b, in, v);
    case Term::Kind::kComponents: return in.components(term(n.a, in, v));
  }
  return 0;
}

bool CompiledFormula::eval(int i, const Interpretation& in, Values& v) const {
  using K = Formula::Kind;
  const Node& n = nodes_[i];
  switch (n.kind) {
    case K::kEqual: return v[n.slot0] == v[n.slot1];
    case K::kMember: return (term(n.t0, in, v) >> v[n.slot0]) & 1u;
    case K::kSub: return (term(n.t0, in, v) & ~term(n.t1, in, v)) == 0;
    case K::kPluralEq: return term(n.t0, in, v) == term(n.t1, in, v);
    case K::kFusion: return (in.fusions_of(term(n.t0, in, v)) >> v[n.slot0]) & 1u;
    case K::kPart: return in.part(v[n.slot0], v[n.slot1]);
    case K::kProperPart: return in.proper_part(v[n.slot0], v[n.slot1]);
    case K::kOverlap: return in.overlap(v[n.slot0], v[n.slot1]);
    case K::kNot: return !eval(n.c0, in, v);
    case K::kAnd: return eval(n.c0, in, v) && eval(n.c1, in, v);
    case K::kOr: return eval(n.c0, in, v) || eval(n.c1, in, v);
    case K::kImplies: return !eval(n.c0, in, v) || eval(n.c1, in, v);
    case K::kIff: return eval(n.c0, in, v) == eval(n.c1, in, v);
    case K::kForall:
    case K::kExists: {
      // forall: stop at the first false instance; exists: at the first true.
      const bool stop_on = n.kind == K::kExists;
      auto& slot = v[n.slot0];
      if (n.point) {
        slot = n.sort == Sort::kIndividual ? v[n.slot1] : term(n.t0, in, v);
        return eval(n.c0, in, v);
      }
      if (n.sort == Sort::kIndividual) {
        const Mask range = n.bound == Formula::Bound::kIn ? term(n.t0, in, v)
                                                          : full_mask(in.size());
        for (Mask m = range; m != 0; m &= m - 1) {
          slot = static_cast<std::uint32_t>(std::countr_zero(m));
          if (eval(n.c0, in, v) == stop_on) return stop_on;
        }
        return !stop_on;
      }
      const Mask range = n.bound == Formula::Bound::kSub ? term(n.t0, in, v)
                                                         : full_mask(in.size());
      // Submasks of range in increasing order.
      Mask s = 0;
      while (true) {
        slot = s;
        if (eval(n.c0, in, v) == stop_on) return stop_on;
        if (s == range) break;
        s = (s - range) & range;
      }
      return !stop_on;
    }
  }
  throw std::logic_error("bad formula node");
}

bool CompiledFormula::evaluate(const Interpretation& in, Values& values) const {
  return eval(root_, in, values);
}

// --- outer blocks / SentenceChecker ----------------------------------------

QuantifierBlock outer_block(const Formula& f) {
  if (!f.is_quantifier()) return {Formula::Kind::kNot, {}, f};
  const auto kind = f.kind();
  std::vector<const Formula*> binders;
  const Formula* g = &f;
  while (g->kind() == kind && !binds(binders, g->var())) {
    binders.push_back(g);
    g = &g->body();
  }
  Formula matrix = *g;
  for (auto it = binders.rbegin(); it != binders.rend(); ++it) {
    const Formula& b = **it;
    if (b.bound() == Formula::Bound::kNone) continue;
    Formula guard = b.bound() == Formula::Bound::kIn ? Formula::member(b.var(), b.range())
                                                     : Formula::sub(Term::var(b.var()), b.range());
    matrix = kind == Formula::Kind::kForall ? Formula::implies(guard, matrix)
                                            : Formula::conj(guard, matrix);
  }
  QuantifierBlock out{kind, {}, matrix};
  for (const Formula* b : binders) out.variables.push_back(b->var());
  return out;
}

namespace {

const NamedFormula& require_closed(const NamedFormula& nf) {
  if (auto free = free_variables(nf.sentence); !free.empty()) {
    throw EvalError("obligation '" + nf.name + "' is not closed: free variable '" +
                    free.front() + "'");
  }
  return nf;
}

}  // namespace

SentenceChecker::SentenceChecker(const NamedFormula& nf)
    : nf_(require_closed(nf)),
      program_(nf.sentence),
      matrix_(outer_block(nf.sentence).matrix, outer_block(nf.sentence).variables),
      universal_(nf.sentence.kind() == Formula::Kind::kForall) {}

bool SentenceChecker::holds(const Interpretation& in) const {
  CompiledFormula::Values v{};
  return program_.evaluate(in, v);
}

bool SentenceChecker::check_raw(const Interpretation& in,
                                std::vector<std::uint32_t>& witness) const {
  CompiledFormula::Values v{};
  const bool value = program_.evaluate(in, v);
  witness.clear();
  if (!value && universal_) {
    for (const auto& [name, slot] : program_.outer_block()) witness.push_back(v[slot]);
  }
  return value;
}

EvalOutcome SentenceChecker::check(const Interpretation& in) const {
  CompiledFormula::Values v{};
  EvalOutcome out;
  out.value = program_.evaluate(in, v);
  const bool exists_block = nf_.sentence.kind() == Formula::Kind::kExists;
  if ((!out.value && universal_) || (out.value && exists_block)) {
    std::vector<std::uint32_t> raw;
    for (const auto& [name, slot] : program_.outer_block()) raw.push_back(v[slot]);
    out.witness = to_assignment(raw);
  }
  return out;
}

Assignment SentenceChecker::to_assignment(std::span<const std::uint32_t> witness) const {
  const auto& block = program_.outer_block();
  if (witness.size() != block.size()) throw EvalError("witness size mismatch");
  Assignment a;
  for (std::size_t i = 0; i < block.size(); ++i) {
    const auto& name = block[i].first;
    if (sort_of(name) == Sort::kIndividual) {
      a.individuals[name] = witness[i];
    } else {
      a.pluralities[name] = Plurality(witness[i]);
    }
  }
  return a;
}

bool SentenceChecker::refutes(const Interpretation& in,
                              std::span<const std::uint32_t> witness) const {
  if (!universal_) return false;
  if (witness.size() != matrix_.free_variables().size()) return false;
  CompiledFormula::Values v{};
  for (std::size_t i = 0; i < witness.size(); ++i) {
    const bool individual = sort_of(matrix_.free_variables()[i]) == Sort::kIndividual;
    if (individual ? witness[i] >= in.size() : (witness[i] & ~full_mask(in.size())) != 0) {
      return false;
    }
    v[i] = witness[i];
  }
  return !matrix_.evaluate(in, v);
}

bool SentenceChecker::refutes(const Interpretation& in, const Assignment& witness) const {
  std::vector<std::uint32_t> raw;
  for (const auto& name : matrix_.free_variables()) {
    if (sort_of(name) == Sort::kIndividual) {
      auto it = witness.individuals.find(name);
      if (it == witness.individuals.end()) return false;
      raw.push_back(it->second);
    } else {
      auto it = witness.pluralities.find(name);
      if (it == witness.pluralities.end()) return false;
      raw.push_back(it->second.bits());
    }
  }
  return refutes(in, raw);
}

// --- free functions --------------------------------------------------------

namespace {

Mask term_value(const Interpretation& in, const Term& t, const Assignment& a) {
  switch (t.kind()) {
    case Term::Kind::kVar: {
      auto it = a.pluralities.find(t.name());
      if (it == a.pluralities.end()) throw EvalError("unbound variable '" + t.name() + "'");
      return it->second.bits();
    }
    case Term::Kind::kSingleton: {
      auto it = a.individuals.find(t.name());
      if (it == a.individuals.end()) throw EvalError("unbound variable '" + t.name() + "'");
      return bit(it->second);
    }
    case Term::Kind::kUnion: return term_value(in, t.lhs(), a) | term_value(in, t.rhs(), a);
    case Term::Kind::kIntersection:
      return term_value(in, t.lhs(), a) & term_value(in, t.rhs(), a);
    case Term::Kind::kComponents: return in.components(term_value(in, t.operand(), a));
  }
  return 0;
}

void check_assignment(const Structure& s, const Assignment& a) {
  const std::size_t n = domain_size(s);
  for (const auto& [name, x] : a.individuals) {
    if (x >= n) throw EvalError("binding " + name + "=" + std::to_string(x) + " out of range");
  }
  for (const auto& [name, zz] : a.pluralities) {
    if ((zz.bits() & ~full_mask(n)) != 0) {
      throw EvalError("binding " + name + "=" + to_string(zz) + " out of range");
    }
  }
}

}  // namespace

Plurality eval_term(const Structure& s, const Term& t, const Assignment& a) {
  check_assignment(s, a);
  Interpretation in(s);
  return Plurality(term_value(in, t, a));
}

bool eval(const Structure& s, const Formula& f, const Assignment& a) {
  check_assignment(s, a);
  const auto free = free_variables(f);
  CompiledFormula program(f, free);
  CompiledFormula::Values v{};
  for (std::size_t i = 0; i < free.size(); ++i) {
    if (sort_of(free[i]) == Sort::kIndividual) {
      auto it = a.individuals.find(free[i]);
      if (it == a.individuals.end()) throw EvalError("unbound variable '" + free[i] + "'");
      v[i] = it->second;
    } else {
      auto it = a.pluralities.find(free[i]);
      if (it == a.pluralities.end()) throw EvalError("unbound variable '" + free[i] + "'");
      v[i] = it->second.bits();
    }
  }
  Interpretation in(s);
  return program.evaluate(in, v);
}

EvalOutcome check_sentence(const Structure& s, const NamedFormula& nf) {
  Interpretation in(s);
  return SentenceChecker(nf).check(in);
}

double estimated_cost(const Formula& f, std::size_t n) {
  if (f.is_atom()) return 1.0;
  if (f.is_quantifier()) {
    const double range = f.var_sort() == Sort::kIndividual ? static_cast<double>(n)
                                                           : std::ldexp(1.0, static_cast<int>(n));
    return 1.0 + range * estimated_cost(f.body(), n);
  }
  double total = 1.0;
  for (const auto& c : f.children()) total += estimated_cost(c, n);
  return total;
}

}  // namespace gem
