#include "gem/export.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace gem {

namespace {

std::string var_name(const std::string& v) {
  return (sort_of(v) == Sort::kIndividual ? "X_" : "XX_") + v;
}

std::string encode_term(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::kVar: return var_name(t.name());
    case Term::Kind::kSingleton: return "sing(" + var_name(t.name()) + ")";
    case Term::Kind::kUnion:
      return "union(" + encode_term(t.lhs()) + ", " + encode_term(t.rhs()) + ")";
    case Term::Kind::kIntersection:
      return "inter(" + encode_term(t.lhs()) + ", " + encode_term(t.rhs()) + ")";
    case Term::Kind::kComponents: return "cpn(" + encode_term(t.operand()) + ")";
  }
  return {};
}

std::string binary(const Formula& f, const char* op) {
  return "(" + encode(f.lhs()) + " " + op + " " + encode(f.rhs()) + ")";
}

std::string pred(const char* name, const std::string& a, const std::string& b) {
  return std::string(name) + "(" + a + ", " + b + ")";
}

// Symbols a set of sentences depends on.
struct Usage {
  bool sing = false, uni = false, inter = false, cpn = false;
  bool f = false, p = false, pp = false, o = false, sub = false, peq = false;
  bool plural = false, plural_exists = false;
};

void scan(const Term& t, Usage& u) {
  u.plural = true;
  switch (t.kind()) {
    case Term::Kind::kVar: return;
    case Term::Kind::kSingleton: u.sing = true; return;
    case Term::Kind::kUnion: u.uni = true; break;
    case Term::Kind::kIntersection: u.inter = true; break;
    case Term::Kind::kComponents: u.cpn = true; scan(t.operand(), u); return;
  }
  scan(t.lhs(), u);
  scan(t.rhs(), u);
}

void scan(const Formula& f, Usage& u) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::kFusion: u.f = true; break;
    case K::kPart: u.p = true; break;
    case K::kProperPart: u.pp = true; break;
    case K::kOverlap: u.o = true; break;
    case K::kSub: u.sub = true; break;
    case K::kPluralEq: u.peq = true; break;
    case K::kForall:
    case K::kExists:
      if (f.var_sort() == Sort::kPlural) {
        u.plural = true;
        if (f.kind() == K::kExists) u.plural_exists = true;
      }
      if (f.bound() == Formula::Bound::kSub) u.sub = true;
      break;
    default: break;
  }
  if (!f.is_atom() || f.kind() != K::kEqual) {
    for (const auto& t : f.terms()) scan(t, u);
  }
  if (!f.is_atom()) {
    for (const auto& c : f.children()) scan(c, u);
  }
}

std::string fof_name(const std::string& name) {
  std::string out;
  for (char c : name) {
    out += std::isalnum(static_cast<unsigned char>(c))
               ? static_cast<char>(std::tolower(static_cast<unsigned char>(c)))
               : '_';
  }
  return out;
}

const char* kZzstar =
    "! [XX_ZZ, X_x] : ((plur(XX_ZZ) & ind(X_x)) => (plur(zzstar(XX_ZZ, X_x)) & "
    "! [X_u] : (ind(X_u) => (mem(X_u, zzstar(XX_ZZ, X_x)) <=> "
    "(p(X_u, X_x) & mem(X_u, cpn(XX_ZZ)))))))";

class Writer {
 public:
  void add(const std::string& name, const char* role, const std::string& body) {
    std::string id = fof_name(name);
    if (!used_.insert(id).second) {
      for (int i = 2;; ++i) {
        if (used_.insert(id + "_" + std::to_string(i)).second) {
          id += "_" + std::to_string(i);
          break;
        }
      }
    }
    out_ << "fof(" << id << ", " << role << ",\n    " << body << ").\n";
  }
  std::ostringstream& raw() { return out_; }
  std::string str() const { return out_.str(); }

 private:
  std::ostringstream out_;
  std::set<std::string> used_;
};

}  // namespace

std::string encode(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::kEqual: return "(" + var_name(f.vars()[0]) + " = " + var_name(f.vars()[1]) + ")";
    case K::kMember: return pred("mem", var_name(f.vars()[0]), encode_term(f.terms()[0]));
    case K::kSub: return pred("sub", encode_term(f.terms()[0]), encode_term(f.terms()[1]));
    case K::kPluralEq: return pred("peq", encode_term(f.terms()[0]), encode_term(f.terms()[1]));
    case K::kFusion: return pred("f", encode_term(f.terms()[0]), var_name(f.vars()[0]));
    case K::kPart: return pred("p", var_name(f.vars()[0]), var_name(f.vars()[1]));
    case K::kProperPart: return pred("pp", var_name(f.vars()[0]), var_name(f.vars()[1]));
    case K::kOverlap: return pred("o", var_name(f.vars()[0]), var_name(f.vars()[1]));
    case K::kNot: return "~ " + encode(f.body());
    case K::kAnd: return binary(f, "&");
    case K::kOr: return binary(f, "|");
    case K::kImplies: return binary(f, "=>");
    case K::kIff: return binary(f, "<=>");
    case K::kForall:
    case K::kExists: {
      const std::string v = var_name(f.var());
      std::string guard = (f.var_sort() == Sort::kIndividual ? "ind(" : "plur(") + v + ")";
      if (f.bound() == Formula::Bound::kIn) {
        guard = "(" + guard + " & " + pred("mem", v, encode_term(f.range())) + ")";
      } else if (f.bound() == Formula::Bound::kSub) {
        guard = "(" + guard + " & " + pred("sub", v, encode_term(f.range())) + ")";
      }
      const bool all = f.kind() == K::kForall;
      return std::string("(") + (all ? "! [" : "? [") + v + "] : (" + guard +
             (all ? " => " : " & ") + encode(f.body()) + "))";
    }
  }
  return {};
}

Obligation make_obligation(const std::string& name, const Theory& theory,
                           const NamedFormula& conjecture) {
  Obligation ob{name,
                conjecture.anchor,
                theory.signature.value_or(conjecture.side.value_or(Signature::kPart)),
                theory.obligations,
                {},
                {},
                conjecture};

  const Theory defs = definitions();
  const bool fusion_side = ob.side == Signature::kFusion;
  Usage use;
  for (const auto& nf : ob.axioms) scan(nf.sentence, use);
  scan(conjecture.sentence, use);
  Usage conj_use;
  scan(conjecture.sentence, conj_use);
  const bool zzstar = !fusion_side && conj_use.cpn && conj_use.plural_exists;
  if (zzstar) use.p = true;

  // Close under use; instances and definitions may mention further symbols.
  std::set<std::string> chosen;
  for (bool changed = true; changed;) {
    changed = false;
    auto need = [&](bool flag, const std::string& def) {
      if (flag && chosen.insert(def).second) {
        scan(defs.find(def).sentence, use);
        changed = true;
      }
    };
    need(use.sing, "I");
    need(use.uni, "union");
    need(use.inter, "intersection");
    need(use.cpn, fusion_side ? "dfU_F" : "dfU_P");
    need(use.sub, "sub");
    need(use.peq, "eq");
    need(use.o, "dfO");
    need(use.pp, "dfPP_P");
    need(fusion_side ? use.p : use.f, fusion_side ? "dfP_F" : "dfF_P");
  }

  for (const auto& nf : defs.obligations) {
    if (!chosen.count(nf.name)) continue;
    if (nf.name == "I" || nf.name == "union" || nf.name == "intersection") {
      ob.instances.push_back(nf.name);
    } else if (nf.name == "dfU_F") {
      ob.instances.push_back("U_F");
    } else if (nf.name == "dfU_P") {
      ob.instances.push_back("U_P");
    } else {
      ob.definitions.push_back(nf);
    }
  }
  if (zzstar) ob.instances.push_back("zzstar");
  return ob;
}

std::string emit_obligation(const Obligation& ob) {
  const Theory defs = definitions();
  Usage use;
  for (const auto& nf : ob.axioms) scan(nf.sentence, use);
  for (const auto& nf : ob.definitions) scan(nf.sentence, use);
  scan(ob.conjecture.sentence, use);
  auto has = [&](const char* instance) {
    return std::find(ob.instances.begin(), ob.instances.end(), instance) != ob.instances.end();
  };

  Writer w;
  auto& head = w.raw();
  head << "% Problem   : " << ob.name << "\n";
  head << "% Anchor    : " << ob.anchor << "\n";
  head << "% Primitive : " << (ob.side == Signature::kFusion ? "fusion (F)" : "part (P)") << "\n";
  head << "% Encoding  : sorts relativized by ind/1 and plur/1, membership mem/2.\n";
  head << "%             No plural comprehension schema; only the instances below\n";
  head << "%             are assumed.\n";
  head << "% Instances :";
  if (ob.instances.empty()) head << " none";
  for (std::size_t i = 0; i < ob.instances.size(); ++i) {
    head << (i ? ", " : " ") << ob.instances[i];
  }
  head << "\n\n";

  w.add("sorts_disjoint", "axiom", "! [X] : ~ (ind(X) & plur(X))");
  w.add("sorts_mem", "axiom", "! [X, Y] : (mem(X, Y) => (ind(X) & plur(Y)))");
  if (use.plural || !ob.instances.empty()) {
    w.add("empty_plurality", "axiom", "(plur(empty) & ! [X] : ~ mem(X, empty))");
    w.add("plural_extensionality", "axiom",
          "! [X, Y] : ((plur(X) & plur(Y) & ! [Z] : (mem(Z, X) <=> mem(Z, Y))) => X = Y)");
  }
  if (has("I")) w.add("type_sing", "axiom", "! [X] : (ind(X) => plur(sing(X)))");
  if (has("union")) {
    w.add("type_union", "axiom", "! [X, Y] : ((plur(X) & plur(Y)) => plur(union(X, Y)))");
  }
  if (has("intersection")) {
    w.add("type_inter", "axiom", "! [X, Y] : ((plur(X) & plur(Y)) => plur(inter(X, Y)))");
  }
  if (has("U_F") || has("U_P")) w.add("type_cpn", "axiom", "! [X] : (plur(X) => plur(cpn(X)))");

  for (const auto& nf : ob.axioms) w.add("ax_" + nf.name, "axiom", encode(nf.sentence));
  for (const auto& nf : ob.definitions) w.add("def_" + nf.name, "axiom", encode(nf.sentence));
  for (const auto& instance : ob.instances) {
    if (instance == "zzstar") {
      w.add("ci_zzstar", "axiom", kZzstar);
      continue;
    }
    const std::string def = instance == "U_F" ? "dfU_F" : instance == "U_P" ? "dfU_P" : instance;
    w.add("ci_" + instance, "axiom", encode(defs.find(def).sentence));
  }
  w.add("goal_" + ob.name, "conjecture", encode(ob.conjecture.sentence));
  return w.str();
}

std::string emit_obligation(const std::string& name, const Theory& theory,
                            const NamedFormula& conjecture) {
  return emit_obligation(make_obligation(name, theory, conjecture));
}

Obligation lemma_obligation(const std::string& name) {
  const Theory lemmas = lemma_suite();
  const NamedFormula& nf = lemmas.find(name);
  return make_obligation(name, theory_for_side(nf.side.value_or(Signature::kPart)), nf);
}

std::string problem_file_name(const std::string& name) {
  std::string out;
  for (char c : name) out += std::isalnum(static_cast<unsigned char>(c)) || c == '_' ? c : '_';
  return out + ".p";
}

std::vector<std::pair<std::string, std::string>> emit_all_lemmas() {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& nf : lemma_suite().obligations) {
    out.emplace_back(problem_file_name(nf.name), emit_obligation(lemma_obligation(nf.name)));
  }
  return out;
}

}  // namespace gem
