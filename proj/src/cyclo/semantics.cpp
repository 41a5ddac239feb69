#include "cyclo/semantics.hpp"

#include <algorithm>
#include <stdexcept>

namespace cyclo {

namespace {

// Advances a mixed-radix counter over `size`-element digits; returns false
// once the counter wraps around to all zeros.
bool bump(std::vector<std::size_t>& idx, std::size_t size) {
  for (std::size_t pos = 0; pos < idx.size(); ++pos) {
    if (++idx[pos] < size) return true;
    idx[pos] = 0;
  }
  return false;
}

Truth tnot(Truth t) {
  if (t == Truth::True) return Truth::False;
  if (t == Truth::False) return Truth::True;
  return Truth::Unknown;
}

}  // namespace

bool Universe::contains(const Term& t) const {
  return std::binary_search(terms.begin(), terms.end(), t);
}

Universe ground_universe(const Signature& sig, unsigned depth,
                         std::size_t cap) {
  std::vector<const Symbol*> funs;
  for (const auto& [name, sym] : sig.symbols())
    if (sym.kind == SymbolKind::Function) funs.push_back(&sym);

  std::vector<Term> cur;
  for (const Symbol* f : funs)
    if (f->arity == 0) cur.push_back(Term::app(f->name));
  std::sort(cur.begin(), cur.end());
  cur.erase(std::unique(cur.begin(), cur.end()), cur.end());
  if (cur.size() > cap)
    throw std::runtime_error("ground_universe: term cap exceeded");

  for (unsigned d = 1; d <= depth; ++d) {
    std::vector<Term> next = cur;
    for (const Symbol* f : funs) {
      if (f->arity == 0 || cur.empty()) continue;
      std::vector<std::size_t> idx(f->arity, 0);
      do {
        std::vector<Term> args;
        args.reserve(f->arity);
        for (std::size_t i : idx) args.push_back(cur[i]);
        next.push_back(Term::app(f->name, std::move(args)));
        if (next.size() > cap)
          throw std::runtime_error("ground_universe: term cap exceeded");
      } while (bump(idx, cur.size()));
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    bool fixpoint = next.size() == cur.size();
    cur = std::move(next);
    if (fixpoint) break;
  }

  Universe u;
  u.terms = std::move(cur);
  return u;
}

bool Approximant::holds(const Atom& a) const {
  auto it = extension.find(a.pred);
  return it != extension.end() && it->second.count(a) != 0;
}

Approximant approximant(const InductiveDefSet& defs,
                        const OrdinaryExtensions& ords, unsigned k,
                        const Universe& U) {
  Approximant A;
  A.k = k;
  for (const auto& [name, sym] : defs.sig.symbols())
    if (sym.kind == SymbolKind::InductivePred) A.extension[name];

  for (unsigned round = 0; round < k; ++round) {
    std::map<std::string, std::set<Atom>> next = A.extension;
    bool changed = false;
    for (const AxiomDef& ax : defs.axioms) {
      std::set<std::string> vset = ax.vars();
      std::vector<std::string> vars(vset.begin(), vset.end());
      if (!vars.empty() && U.terms.empty()) continue;
      std::vector<std::size_t> idx(vars.size(), 0);
      do {
        std::map<std::string, Term> binding;
        for (std::size_t i = 0; i < vars.size(); ++i)
          binding.emplace(vars[i], U.terms[idx[i]]);
        Subst inst{std::move(binding)};

        bool fires = true;
        for (const Atom& o : ax.ordinary) {
          Atom oi = inst(o);
          if (oi.is_equality()) {
            if (!(oi.args[0] == oi.args[1])) fires = false;
          } else {
            auto it = ords.find(oi.pred);
            if (it == ords.end() || it->second.count(oi) == 0) fires = false;
          }
          if (!fires) break;
        }
        if (fires)
          for (const Atom& b : ax.inductive)
            if (!A.holds(inst(b))) {
              fires = false;
              break;
            }
        if (fires) {
          Atom head = inst(ax.head);
          bool bounded = true;
          for (const Term& t : head.args)
            if (!U.contains(t)) {
              bounded = false;
              break;
            }
          if (bounded && next[head.pred].insert(head).second) changed = true;
        }
      } while (bump(idx, U.terms.size()));
    }
    A.extension = std::move(next);
    if (!changed) break;  // fixpoint reached; later stages are identical
  }
  return A;
}

const char* truth_name(Truth t) {
  switch (t) {
    case Truth::False: return "false";
    case Truth::Unknown: return "unknown";
    case Truth::True: return "true";
  }
  return "unknown";
}

Truth eval_ground_formula(const InductiveDefSet& defs,
                          const OrdinaryExtensions& ords, const Approximant& A,
                          const Universe& U, const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::Atomic: {
      const Atom& a = f.atom;
      if (a.is_equality())
        return a.args[0] == a.args[1] ? Truth::True : Truth::False;
      if (defs.sig.is_inductive(a.pred))
        return A.holds(a) ? Truth::True : Truth::Unknown;
      auto it = ords.find(a.pred);
      bool in = it != ords.end() && it->second.count(a) != 0;
      return in ? Truth::True : Truth::False;
    }
    case Formula::Kind::And: {
      Truth t = Truth::True;
      for (const Formula& g : f.sub)
        t = std::min(t, eval_ground_formula(defs, ords, A, U, g));
      return t;
    }
    case Formula::Kind::Or: {
      Truth t = Truth::False;
      for (const Formula& g : f.sub)
        t = std::max(t, eval_ground_formula(defs, ords, A, U, g));
      return t;
    }
    case Formula::Kind::Not:
      return tnot(eval_ground_formula(defs, ords, A, U, f.sub[0]));
    case Formula::Kind::Implies:
      return std::max(tnot(eval_ground_formula(defs, ords, A, U, f.sub[0])),
                      eval_ground_formula(defs, ords, A, U, f.sub[1]));
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      bool universal = f.kind == Formula::Kind::Forall;
      Truth t = universal ? Truth::True : Truth::False;
      if (U.terms.empty()) return t;  // vacuous over the empty universe
      std::vector<std::size_t> idx(f.binders.size(), 0);
      do {
        std::map<std::string, Term> binding;
        for (std::size_t i = 0; i < f.binders.size(); ++i)
          binding.emplace(f.binders[i], U.terms[idx[i]]);
        Subst inst{std::move(binding)};
        Truth r = eval_ground_formula(defs, ords, A, U, inst(f.sub[0]));
        t = universal ? std::min(t, r) : std::max(t, r);
      } while (bump(idx, U.terms.size()));
      return t;
    }
  }
  return Truth::Unknown;
}

Truth eval_ground_sequent(const InductiveDefSet& defs,
                          const OrdinaryExtensions& ords, const Approximant& A,
                          const Universe& U, const Sequent& s) {
  if (!free_vars(s).empty())
    throw std::invalid_argument(
        "eval_ground_sequent: sequent has free variables: " + s.str());

  Truth worst_ante = Truth::True;  // min over antecedents
  for (const Formula& g : s.ante)
    worst_ante = std::min(worst_ante, eval_ground_formula(defs, ords, A, U, g));
  Truth best_succ = Truth::False;  // max over succedents
  for (const Formula& d : s.succ)
    best_succ = std::max(best_succ, eval_ground_formula(defs, ords, A, U, d));

  if (worst_ante == Truth::False || best_succ == Truth::True)
    return Truth::True;
  if (worst_ante == Truth::True && best_succ == Truth::False)
    return Truth::False;
  return Truth::Unknown;
}

}  // namespace cyclo
