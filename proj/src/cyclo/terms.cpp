#include "cyclo/terms.hpp"

#include <algorithm>
#include <sstream>

namespace cyclo {

// ---------------------------------------------------------------- Signature

void Signature::declare(const std::string& name, SymbolKind kind, unsigned arity) {
  auto it = table_.find(name);
  if (it != table_.end()) {
    if (it->second.kind != kind || it->second.arity != arity)
      throw SignatureError("symbol '" + name + "' redeclared with different kind or arity");
    return;
  }
  table_[name] = Symbol{name, kind, arity};
}

const Symbol* Signature::find(const std::string& name) const {
  auto it = table_.find(name);
  return it == table_.end() ? nullptr : &it->second;
}

bool Signature::is_function(const std::string& name) const {
  const Symbol* s = find(name);
  return s && s->kind == SymbolKind::Function;
}

bool Signature::is_inductive(const std::string& name) const {
  const Symbol* s = find(name);
  return s && s->kind == SymbolKind::InductivePred;
}

bool Signature::is_ordinary_pred(const std::string& name) const {
  const Symbol* s = find(name);
  return s && s->kind == SymbolKind::OrdinaryPred;
}

// --------------------------------------------------------------------- Term

Term Term::mkvar(std::string name) {
  Term t;
  t.var = true;
  t.head = std::move(name);
  return t;
}

Term Term::app(std::string fn, std::vector<Term> as) {
  Term t;
  t.var = false;
  t.head = std::move(fn);
  t.args = std::move(as);
  return t;
}

std::string Term::str() const {
  if (var || args.empty()) return head;
  std::ostringstream os;
  os << head << '(';
  for (size_t i = 0; i < args.size(); ++i) {
    if (i) os << ',';
    os << args[i].str();
  }
  os << ')';
  return os.str();
}

int cmp(const Term& a, const Term& b) {
  if (a.var != b.var) return a.var ? -1 : 1;
  if (int c = a.head.compare(b.head)) return c < 0 ? -1 : 1;
  if (a.args.size() != b.args.size()) return a.args.size() < b.args.size() ? -1 : 1;
  for (size_t i = 0; i < a.args.size(); ++i)
    if (int c = cmp(a.args[i], b.args[i])) return c;
  return 0;
}

bool operator==(const Term& a, const Term& b) { return cmp(a, b) == 0; }

// --------------------------------------------------------------------- Atom

Atom Atom::make(std::string pred, std::vector<Term> as) {
  Atom a;
  a.pred = std::move(pred);
  a.args = std::move(as);
  return a;
}

Atom Atom::equality(Term lhs, Term rhs) {
  return make("=", {std::move(lhs), std::move(rhs)});
}

std::string Atom::str() const {
  if (is_equality()) return args[0].str() + " = " + args[1].str();
  if (args.empty()) return pred;
  std::ostringstream os;
  os << pred << '(';
  for (size_t i = 0; i < args.size(); ++i) {
    if (i) os << ',';
    os << args[i].str();
  }
  os << ')';
  return os.str();
}

int cmp(const Atom& a, const Atom& b) {
  if (int c = a.pred.compare(b.pred)) return c < 0 ? -1 : 1;
  if (a.args.size() != b.args.size()) return a.args.size() < b.args.size() ? -1 : 1;
  for (size_t i = 0; i < a.args.size(); ++i)
    if (int c = cmp(a.args[i], b.args[i])) return c;
  return 0;
}

bool operator==(const Atom& a, const Atom& b) { return cmp(a, b) == 0; }

// ------------------------------------------------------------------ Formula

Formula Formula::atomic(Atom a) {
  Formula f;
  f.kind = Kind::Atomic;
  f.atom = std::move(a);
  return f;
}

std::string Formula::str() const {
  switch (kind) {
    case Kind::Atomic: return atom.str();
    case Kind::Not: return "not(" + sub[0].str() + ")";
    case Kind::And: return "(" + sub[0].str() + " and " + sub[1].str() + ")";
    case Kind::Or: return "(" + sub[0].str() + " or " + sub[1].str() + ")";
    case Kind::Implies: return "(" + sub[0].str() + " => " + sub[1].str() + ")";
    case Kind::Forall:
    case Kind::Exists: {
      std::string q = kind == Kind::Forall ? "forall" : "exists";
      std::string vs;
      for (size_t i = 0; i < binders.size(); ++i) {
        if (i) vs += ' ';
        vs += binders[i];
      }
      return q + " " + vs + ". " + sub[0].str();
    }
  }
  return "?";
}

int cmp(const Formula& a, const Formula& b) {
  if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind) ? -1 : 1;
  if (a.kind == Formula::Kind::Atomic) return cmp(a.atom, b.atom);
  if (a.binders != b.binders) return a.binders < b.binders ? -1 : 1;
  if (a.sub.size() != b.sub.size()) return a.sub.size() < b.sub.size() ? -1 : 1;
  for (size_t i = 0; i < a.sub.size(); ++i)
    if (int c = cmp(a.sub[i], b.sub[i])) return c;
  return 0;
}

bool operator==(const Formula& a, const Formula& b) { return cmp(a, b) == 0; }

// ------------------------------------------------------------------ Sequent

std::string Sequent::str() const {
  std::ostringstream os;
  for (size_t i = 0; i < ante.size(); ++i) {
    if (i) os << ", ";
    os << ante[i].str();
  }
  os << (ante.empty() ? "|-" : " |-");
  for (size_t i = 0; i < succ.size(); ++i) {
    os << (i ? ", " : " ") << succ[i].str();
  }
  return os.str();
}

static std::vector<Formula> sorted(std::vector<Formula> v) {
  std::sort(v.begin(), v.end());
  return v;
}

int seq_cmp(const Sequent& a, const Sequent& b) {
  std::vector<Formula> aa = sorted(a.ante), ba = sorted(b.ante);
  if (aa.size() != ba.size()) return aa.size() < ba.size() ? -1 : 1;
  for (size_t i = 0; i < aa.size(); ++i)
    if (int c = cmp(aa[i], ba[i])) return c;
  std::vector<Formula> as = sorted(a.succ), bs = sorted(b.succ);
  if (as.size() != bs.size()) return as.size() < bs.size() ? -1 : 1;
  for (size_t i = 0; i < as.size(); ++i)
    if (int c = cmp(as[i], bs[i])) return c;
  return 0;
}

bool seq_equal(const Sequent& a, const Sequent& b) { return seq_cmp(a, b) == 0; }

std::vector<std::pair<size_t, Atom>> iaa_occurrences(const Sequent& s,
                                                     const Signature& sig) {
  std::vector<std::pair<size_t, Atom>> out;
  for (size_t i = 0; i < s.ante.size(); ++i) {
    const Formula& f = s.ante[i];
    if (f.is_atom() && !f.atom.is_equality() && sig.is_inductive(f.atom.pred))
      out.emplace_back(i, f.atom);
  }
  return out;
}

std::vector<Atom> iaas(const Sequent& s, const Signature& sig) {
  std::vector<Atom> out;
  for (auto& [i, a] : iaa_occurrences(s, sig)) out.push_back(a);
  return out;
}

// -------------------------------------------------------------------- Subst

Subst::Subst(std::map<std::string, Term> bindings) {
  for (auto& [v, t] : bindings)
    if (!(t.var && t.head == v)) b_.emplace(v, std::move(t));
}

void Subst::bind(const std::string& v, Term t) {
  if (t.var && t.head == v) {
    b_.erase(v);
    return;
  }
  b_[v] = std::move(t);
}

const Term* Subst::lookup(const std::string& v) const {
  auto it = b_.find(v);
  return it == b_.end() ? nullptr : &it->second;
}

Term Subst::operator()(const Term& t) const {
  if (t.var) {
    const Term* r = lookup(t.head);
    return r ? *r : t;
  }
  Term out = Term::app(t.head, {});
  out.args.reserve(t.args.size());
  for (const Term& a : t.args) out.args.push_back((*this)(a));
  return out;
}

Atom Subst::operator()(const Atom& a) const {
  Atom out;
  out.pred = a.pred;
  out.args.reserve(a.args.size());
  for (const Term& t : a.args) out.args.push_back((*this)(t));
  return out;
}

Formula Subst::operator()(const Formula& f) const {
  if (f.is_atom()) return Formula::atomic((*this)(f.atom));
  Formula out;
  out.kind = f.kind;
  out.binders = f.binders;
  if (f.kind == Formula::Kind::Forall || f.kind == Formula::Kind::Exists) {
    // Bound variables shadow the substitution. If an image would capture a
    // binder, the binder is renamed apart first.
    Subst inner = *this;
    for (const std::string& v : f.binders) inner.b_.erase(v);
    std::set<std::string> images;
    for (auto& [v, t] : inner.b_)
      if (free_vars(f).count(v)) {
        auto fv = free_vars(t);
        images.insert(fv.begin(), fv.end());
      }
    Subst rename;
    std::set<std::string> avoid = images;
    auto body_fv = free_vars(f.sub[0]);
    avoid.insert(body_fv.begin(), body_fv.end());
    for (std::string& v : out.binders) {
      if (images.count(v)) {
        std::string nv = fresh_var(v, avoid);
        avoid.insert(nv);
        rename.bind(v, Term::mkvar(nv));
        v = nv;
      }
    }
    out.sub.push_back(inner(rename(f.sub[0])));
    return out;
  }
  out.sub.reserve(f.sub.size());
  for (const Formula& g : f.sub) out.sub.push_back((*this)(g));
  return out;
}

Sequent Subst::operator()(const Sequent& s) const {
  Sequent out;
  out.ante.reserve(s.ante.size());
  out.succ.reserve(s.succ.size());
  for (const Formula& f : s.ante) out.ante.push_back((*this)(f));
  for (const Formula& f : s.succ) out.succ.push_back((*this)(f));
  return out;
}

Subst Subst::compose(const Subst& s1, const Subst& s2) {
  Subst out;
  for (auto& [v, t] : s1.b_) out.bind(v, s2(t));
  for (auto& [v, t] : s2.b_)
    if (!s1.b_.count(v)) out.bind(v, t);
  return out;
}

std::string Subst::str() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (auto& [v, t] : b_) {
    if (!first) os << ", ";
    first = false;
    os << v << " -> " << t.str();
  }
  os << '}';
  return os.str();
}

bool operator==(const Subst& a, const Subst& b) {
  return a.bindings() == b.bindings();
}

// ---------------------------------------------------------------- free vars

static void collect_vars(const Term& t, std::set<std::string>& out) {
  if (t.var) {
    out.insert(t.head);
    return;
  }
  for (const Term& a : t.args) collect_vars(a, out);
}

std::set<std::string> free_vars(const Term& t) {
  std::set<std::string> out;
  collect_vars(t, out);
  return out;
}

std::set<std::string> free_vars(const Atom& a) {
  std::set<std::string> out;
  for (const Term& t : a.args) collect_vars(t, out);
  return out;
}

std::set<std::string> free_vars(const Formula& f) {
  if (f.is_atom()) return free_vars(f.atom);
  std::set<std::string> out;
  for (const Formula& g : f.sub) {
    auto s = free_vars(g);
    out.insert(s.begin(), s.end());
  }
  for (const std::string& v : f.binders) out.erase(v);
  return out;
}

std::set<std::string> free_vars(const Sequent& s) {
  std::set<std::string> out;
  for (const Formula& f : s.ante) {
    auto v = free_vars(f);
    out.insert(v.begin(), v.end());
  }
  for (const Formula& f : s.succ) {
    auto v = free_vars(f);
    out.insert(v.begin(), v.end());
  }
  return out;
}

// ----------------------------------------------------------------- matching

bool match_into(const Term& pattern, const Term& subject,
                std::map<std::string, Term>& binding) {
  if (pattern.var) {
    auto it = binding.find(pattern.head);
    if (it != binding.end()) return it->second == subject;
    binding.emplace(pattern.head, subject);
    return true;
  }
  if (subject.var || pattern.head != subject.head ||
      pattern.args.size() != subject.args.size())
    return false;
  for (size_t i = 0; i < pattern.args.size(); ++i)
    if (!match_into(pattern.args[i], subject.args[i], binding)) return false;
  return true;
}

bool match_into(const Atom& pattern, const Atom& subject,
                std::map<std::string, Term>& binding) {
  if (pattern.pred != subject.pred || pattern.args.size() != subject.args.size())
    return false;
  for (size_t i = 0; i < pattern.args.size(); ++i)
    if (!match_into(pattern.args[i], subject.args[i], binding)) return false;
  return true;
}

std::optional<Subst> match(const Term& pattern, const Term& subject) {
  std::map<std::string, Term> b;
  if (!match_into(pattern, subject, b)) return std::nullopt;
  return Subst(std::move(b));
}

std::optional<Subst> match(const Atom& pattern, const Atom& subject) {
  std::map<std::string, Term> b;
  if (!match_into(pattern, subject, b)) return std::nullopt;
  return Subst(std::move(b));
}

bool match_restricted(const Term& pattern, const Term& subject,
                      const std::set<std::string>& bindable,
                      std::map<std::string, Term>& binding) {
  if (pattern.var && bindable.count(pattern.head)) {
    auto it = binding.find(pattern.head);
    if (it != binding.end()) return it->second == subject;
    binding.emplace(pattern.head, subject);
    return true;
  }
  if (pattern.var) return subject.var && subject.head == pattern.head;
  if (subject.var || pattern.head != subject.head ||
      pattern.args.size() != subject.args.size())
    return false;
  for (size_t i = 0; i < pattern.args.size(); ++i)
    if (!match_restricted(pattern.args[i], subject.args[i], bindable, binding))
      return false;
  return true;
}

bool match_restricted(const Atom& pattern, const Atom& subject,
                      const std::set<std::string>& bindable,
                      std::map<std::string, Term>& binding) {
  if (pattern.pred != subject.pred || pattern.args.size() != subject.args.size())
    return false;
  for (size_t i = 0; i < pattern.args.size(); ++i)
    if (!match_restricted(pattern.args[i], subject.args[i], bindable, binding))
      return false;
  return true;
}

std::string fresh_var(const std::string& base, const std::set<std::string>& avoid) {
  std::string name = base;
  while (avoid.count(name)) name += '\'';
  return name;
}

// ---------------------------------------------------------------- multisets

std::vector<Formula> multiset_diff(const std::vector<Formula>& a,
                                   const std::vector<Formula>& b) {
  std::vector<Formula> out = a;
  for (const Formula& f : b) {
    auto it = std::find(out.begin(), out.end(), f);
    if (it != out.end()) out.erase(it);
  }
  return out;
}

bool multiset_includes(const std::vector<Formula>& big,
                       const std::vector<Formula>& small) {
  std::vector<Formula> rest = big;
  for (const Formula& f : small) {
    auto it = std::find(rest.begin(), rest.end(), f);
    if (it == rest.end()) return false;
    rest.erase(it);
  }
  return true;
}

}  // namespace cyclo
