#include "cyclo/rules.hpp"

#include <algorithm>
#include <sstream>

namespace cyclo {

std::set<std::string> AxiomDef::vars() const {
  std::set<std::string> out = free_vars(head);
  for (const Atom& a : ordinary) {
    auto v = free_vars(a);
    out.insert(v.begin(), v.end());
  }
  for (const Atom& a : inductive) {
    auto v = free_vars(a);
    out.insert(v.begin(), v.end());
  }
  return out;
}

const AxiomDef* InductiveDefSet::axiom(const std::string& name) const {
  for (const AxiomDef& a : axioms)
    if (a.name == name) return &a;
  return nullptr;
}

std::vector<const AxiomDef*> InductiveDefSet::axioms_for(const std::string& pred) const {
  std::vector<const AxiomDef*> out;
  for (const AxiomDef& a : axioms)
    if (a.head.pred == pred) out.push_back(&a);
  return out;
}

const char* rule_name(RuleTag tag) {
  switch (tag) {
    case RuleTag::Subst: return "Subst";
    case RuleTag::Gen: return "Gen";
    case RuleTag::Case: return "Case";
    case RuleTag::Unfold: return "Unfold";
    case RuleTag::Wk: return "Wk";
    case RuleTag::Cut: return "Cut";
    case RuleTag::Ax: return "Ax";
    case RuleTag::AllR: return "AllR";
    case RuleTag::ExL: return "ExL";
    case RuleTag::Generic: return "Generic";
  }
  return "?";
}

// --------------------------------------------------------- case distinction

std::vector<CaseBranch> case_distinctions(const InductiveDefSet& defs,
                                          const Atom& principal,
                                          const std::set<std::string>& avoid) {
  if (!defs.sig.is_inductive(principal.pred))
    throw RuleError("case principal '" + principal.str() + "' is not an inductive atom");
  auto axs = defs.axioms_for(principal.pred);
  if (axs.empty())
    throw RuleError("no defining axiom for inductive predicate '" + principal.pred + "'");

  std::vector<CaseBranch> out;
  for (const AxiomDef* ax : axs) {
    // Rename every axiom variable fresh w.r.t. the avoid set so the
    // distinction introduces only new names.
    std::set<std::string> used = avoid;
    auto pv = free_vars(principal);
    used.insert(pv.begin(), pv.end());
    Subst rho;
    for (const std::string& v : ax->vars()) {
      std::string nv = fresh_var(v, used);
      used.insert(nv);
      rho.bind(v, Term::mkvar(nv));
    }

    CaseBranch br;
    br.axiom = ax->name;
    Atom head = rho(ax->head);
    for (size_t i = 0; i < principal.args.size(); ++i)
      br.equations.push_back(Atom::equality(principal.args[i], head.args[i]));
    for (const Atom& a : ax->ordinary) br.ordinary.push_back(rho(a));
    for (const Atom& a : ax->inductive) br.descendants.push_back(rho(a));
    out.push_back(std::move(br));
  }
  return out;
}

Sequent case_premise(const Sequent& conclusion, const Atom& principal,
                     const CaseBranch& branch) {
  Sequent out;
  for (const Atom& e : branch.equations) out.ante.push_back(Formula::atomic(e));
  for (const Atom& a : branch.ordinary) out.ante.push_back(Formula::atomic(a));
  for (const Atom& a : branch.descendants) out.ante.push_back(Formula::atomic(a));
  bool consumed = false;
  Formula pf = Formula::atomic(principal);
  for (const Formula& f : conclusion.ante) {
    if (!consumed && f == pf) {
      consumed = true;
      continue;
    }
    out.ante.push_back(f);
  }
  out.succ = conclusion.succ;
  return out;
}

// ------------------------------------------------------------ right unfold

std::vector<Sequent> unfold_premises(const InductiveDefSet& defs,
                                     const std::string& axiom_name,
                                     const std::vector<Formula>& gamma,
                                     const Atom& principal,
                                     const std::vector<Formula>& delta_rest,
                                     std::vector<std::string>* warnings) {
  const AxiomDef* ax = defs.axiom(axiom_name);
  if (!ax) throw RuleError("unknown axiom '" + axiom_name + "'");
  auto sigma = match(ax->head, principal);
  if (!sigma)
    throw RuleError("axiom '" + axiom_name + "' head " + ax->head.str() +
                    " does not match principal " + principal.str());

  std::set<std::string> head_vars = free_vars(ax->head);
  auto note_unbound = [&](const Atom& body) {
    if (!warnings) return;
    for (const std::string& v : free_vars(body))
      if (!head_vars.count(v))
        warnings->push_back("axiom '" + axiom_name + "' body variable '" + v +
                            "' is not bound by the head match; kept verbatim");
  };

  std::vector<Sequent> out;
  auto add = [&](const Atom& body) {
    note_unbound(body);
    Sequent s;
    s.ante = gamma;
    s.succ.push_back(Formula::atomic((*sigma)(body)));
    for (const Formula& f : delta_rest) s.succ.push_back(f);
    out.push_back(std::move(s));
  };
  for (const Atom& a : ax->ordinary) add(a);
  for (const Atom& a : ax->inductive) add(a);
  return out;
}

// -------------------------------------------------- restricted term matcher

namespace {

// Backtracking multiset match: assign every pattern atom to a distinct
// antecedent occurrence, leaving exactly `leftover` unmatched.
struct BranchMatch {
  const std::vector<Atom>* patterns;
  const std::vector<Formula>* subjects;
  std::set<std::string> bindable;
  std::vector<bool> used;
  std::map<std::string, Term> binding;
  std::vector<size_t> assign;  // pattern index -> matched subject position

  bool run(size_t i, const std::vector<Formula>& leftover) {
    if (i == patterns->size()) {
      std::vector<Formula> rest;
      for (size_t k = 0; k < subjects->size(); ++k)
        if (!used[k]) rest.push_back((*subjects)[k]);
      return multiset_includes(rest, leftover) && rest.size() == leftover.size();
    }
    for (size_t k = 0; k < subjects->size(); ++k) {
      if (used[k] || !(*subjects)[k].is_atom()) continue;
      auto saved = binding;
      if (match_restricted((*patterns)[i], (*subjects)[k].atom, bindable, binding)) {
        used[k] = true;
        assign.push_back(k);
        if (run(i + 1, leftover)) return true;
        assign.pop_back();
        used[k] = false;
      }
      binding = std::move(saved);
    }
    return false;
  }
};

std::string list_str(const std::vector<Sequent>& seqs) {
  std::ostringstream os;
  for (size_t i = 0; i < seqs.size(); ++i) {
    if (i) os << " ; ";
    os << seqs[i].str();
  }
  return os.str();
}

}  // namespace

// -------------------------------------------------------------- validation

static void check_subst(const Sequent& conclusion, const RuleApp& app,
                        const std::vector<Sequent>& premises, StepCheck& res) {
  if (premises.size() != 1) {
    res.fail("Subst expects exactly one premise");
    return;
  }
  Sequent inst = app.subst(premises[0]);
  if (!seq_equal(inst, conclusion))
    res.fail("Subst premise instantiated by " + app.subst.str() + " gives " +
             inst.str() + ", conclusion is " + conclusion.str());
}

static void check_gen(const Sequent& conclusion, const RuleApp& app,
                      const std::vector<Sequent>& premises, StepCheck& res) {
  const Atom& eq = app.gen_principal;
  if (!eq.is_equality()) {
    res.fail("Gen principal must be an equality");
    return;
  }
  const Term& t = eq.args[0];
  const Term& u = eq.args[1];
  if (!t.var) {
    res.fail("Gen principal " + eq.str() + " must equate a variable with a term");
    return;
  }
  if (free_vars(u).count(t.head)) {
    res.fail("Gen principal " + eq.str() + ": variable occurs in the replacing term");
    return;
  }
  Formula pf = Formula::atomic(eq);
  auto it = std::find(conclusion.ante.begin(), conclusion.ante.end(), pf);
  if (it == conclusion.ante.end()) {
    res.fail("Gen principal " + eq.str() + " is not an antecedent of the conclusion");
    return;
  }
  if (premises.size() != 1) {
    res.fail("Gen expects exactly one premise");
    return;
  }
  Sequent reduced = conclusion;
  reduced.ante.erase(reduced.ante.begin() + (it - conclusion.ante.begin()));
  if (free_vars(reduced).count(t.head))
    res.warnings.push_back("Gen variable '" + t.head +
                           "' also occurs in the sequent context; traces "
                           "through this step rely on the simplified reading");
  Subst repl;
  repl.bind(t.head, u);
  Sequent expected = repl(reduced);
  if (!seq_equal(expected, premises[0]))
    res.fail("Gen premise should be " + expected.str() + ", got " +
             premises[0].str());
}

static void check_case(const InductiveDefSet& defs, const Sequent& conclusion,
                       const RuleApp& app, const std::vector<Sequent>& premises,
                       const std::vector<NodeId>& children, CheckMode mode,
                       StepCheck& res) {
  const Atom& principal = app.case_principal;
  Formula pf = Formula::atomic(principal);
  if (std::find(conclusion.ante.begin(), conclusion.ante.end(), pf) ==
      conclusion.ante.end()) {
    res.fail("Case principal " + principal.str() +
             " is not an antecedent of the conclusion");
    return;
  }

  std::vector<const AxiomDef*> axs;
  try {
    axs = defs.axioms_for(principal.pred);
    if (!defs.sig.is_inductive(principal.pred) || axs.empty())
      throw RuleError("no case distinction for " + principal.str());
  } catch (const RuleError& e) {
    res.fail(e.what());
    return;
  }

  // Branch bookkeeping: every defining axiom exactly once, every branch
  // child among the node's children, premise count equal to branch count.
  std::set<std::string> named;
  for (auto& [ax, child] : app.branches) {
    if (!named.insert(ax).second) {
      res.fail("Case lists axiom '" + ax + "' twice");
      return;
    }
  }
  for (const AxiomDef* ax : axs)
    if (!named.count(ax->name)) {
      res.fail("Case is missing a branch for axiom '" + ax->name + "'");
      return;
    }
  if (named.size() != axs.size() || app.branches.size() != children.size() ||
      premises.size() != children.size()) {
    res.fail("Case branch count does not match the defining axioms");
    return;
  }

  std::set<std::string> conclusion_vars = free_vars(conclusion);
  std::vector<Formula> leftover;
  {
    bool consumed = false;
    for (const Formula& f : conclusion.ante) {
      if (!consumed && f == pf) {
        consumed = true;
        continue;
      }
      leftover.push_back(f);
    }
  }

  for (auto& [ax_name, child] : app.branches) {
    auto cit = std::find(children.begin(), children.end(), child);
    if (cit == children.end()) {
      res.fail("Case branch for axiom '" + ax_name + "' names child " +
               child.str() + " which is not a premise of this node");
      return;
    }
    size_t pidx = static_cast<size_t>(cit - children.begin());
    const Sequent& premise = premises[pidx];
    const AxiomDef* ax = defs.axiom(ax_name);
    if (!ax || ax->head.pred != principal.pred) {
      res.fail("Case branch axiom '" + ax_name + "' does not define " +
               principal.pred);
      return;
    }

    if (!seq_equal(Sequent{{}, premise.succ}, Sequent{{}, conclusion.succ})) {
      res.fail("Case branch '" + ax_name + "' changes the succedent");
      return;
    }

    // The axiom's variables act as pattern variables; they are renamed to
    // reserved names first so they cannot collide with sequent variables.
    std::set<std::string> avoid = conclusion_vars;
    auto prem_vars = free_vars(premise);
    avoid.insert(prem_vars.begin(), prem_vars.end());
    for (const std::string& v : ax->vars()) avoid.insert(v);
    Subst reserve;
    std::set<std::string> pattern_vars;
    for (const std::string& v : ax->vars()) {
      std::string nv = fresh_var(v + "'", avoid);
      avoid.insert(nv);
      reserve.bind(v, Term::mkvar(nv));
      pattern_vars.insert(nv);
    }

    Atom head = reserve(ax->head);
    std::vector<Atom> patterns;
    for (size_t i = 0; i < principal.args.size(); ++i)
      patterns.push_back(Atom::equality(principal.args[i], head.args[i]));
    for (const Atom& a : ax->ordinary) patterns.push_back(reserve(a));
    size_t desc_begin = patterns.size();
    for (const Atom& a : ax->inductive) patterns.push_back(reserve(a));

    BranchMatch bm;
    bm.patterns = &patterns;
    bm.subjects = &premise.ante;
    bm.bindable = pattern_vars;
    bm.used.assign(premise.ante.size(), false);
    if (!bm.run(0, leftover)) {
      res.fail("Case branch '" + ax_name + "' premise " + premise.str() +
               " is not a case distinction of " + principal.str());
      return;
    }

    // Freshness: in strict mode every axiom variable must be realized by a
    // distinct variable that does not occur free in the conclusion.
    if (mode == CheckMode::Strict) {
      std::set<std::string> seen;
      for (const std::string& pv : pattern_vars) {
        auto it = bm.binding.find(pv);
        if (it == bm.binding.end()) continue;  // variable unused by the axiom
        if (!it->second.var) {
          res.fail("Case branch '" + ax_name + "' realizes axiom variable as non-variable term " +
                   it->second.str());
          return;
        }
        if (conclusion_vars.count(it->second.head)) {
          res.fail("Case branch '" + ax_name + "' reuses variable '" +
                   it->second.head + "' which is free in the conclusion");
          return;
        }
        if (!seen.insert(it->second.head).second) {
          res.fail("Case branch '" + ax_name + "' maps two axiom variables to '" +
                   it->second.head + "'");
          return;
        }
      }
    }

    std::vector<size_t> positions(bm.assign.begin() + static_cast<std::ptrdiff_t>(desc_begin),
                                  bm.assign.end());
    std::sort(positions.begin(), positions.end());
    res.case_descendants[pidx] = std::move(positions);
  }
}

static void check_unfold(const InductiveDefSet& defs, const Sequent& conclusion,
                         const RuleApp& app, const std::vector<Sequent>& premises,
                         StepCheck& res) {
  Formula pf = Formula::atomic(app.unfold_principal);
  auto it = std::find(conclusion.succ.begin(), conclusion.succ.end(), pf);
  if (it == conclusion.succ.end()) {
    res.fail("Unfold principal " + app.unfold_principal.str() +
             " is not a succedent of the conclusion");
    return;
  }
  std::vector<Formula> delta_rest;
  for (auto jt = conclusion.succ.begin(); jt != conclusion.succ.end(); ++jt)
    if (jt != it) delta_rest.push_back(*jt);

  std::vector<Sequent> expected;
  try {
    expected = unfold_premises(defs, app.unfold_axiom, conclusion.ante,
                               app.unfold_principal, delta_rest, &res.warnings);
  } catch (const RuleError& e) {
    res.fail(e.what());
    return;
  }
  if (expected.size() != premises.size()) {
    res.fail("Unfold with axiom '" + app.unfold_axiom + "' expects " +
             std::to_string(expected.size()) + " premise(s), node has " +
             std::to_string(premises.size()));
    return;
  }
  // Premises are compared as a multiset of sequents.
  std::vector<bool> used(premises.size(), false);
  for (const Sequent& e : expected) {
    bool found = false;
    for (size_t i = 0; i < premises.size(); ++i) {
      if (!used[i] && seq_equal(premises[i], e)) {
        used[i] = true;
        found = true;
        break;
      }
    }
    if (!found) {
      res.fail("Unfold premises should be [" + list_str(expected) + "], got [" +
               list_str(premises) + "]");
      return;
    }
  }
}

static void check_wk(const Sequent& conclusion, const RuleApp& app,
                     const std::vector<Sequent>& premises, StepCheck& res) {
  if (premises.size() != 1) {
    res.fail("Wk expects exactly one premise");
    return;
  }
  const Sequent& p = premises[0];
  if (!multiset_includes(conclusion.ante, p.ante) ||
      !multiset_includes(conclusion.succ, p.succ)) {
    res.fail("Wk premise is not a sub-multiset of the conclusion");
    return;
  }
  std::vector<Formula> dropped = multiset_diff(conclusion.ante, p.ante);
  for (const Formula& f : multiset_diff(conclusion.succ, p.succ))
    dropped.push_back(f);
  std::vector<Formula> declared = app.wk_dropped;
  if (!(multiset_includes(dropped, declared) && dropped.size() == declared.size()))
    res.fail("Wk drops a different multiset of formulas than declared");
}

static void check_cut(const Sequent& conclusion, const RuleApp& app,
                      const std::vector<Sequent>& premises, StepCheck& res) {
  if (premises.size() != 2) {
    res.fail("Cut expects exactly two premises");
    return;
  }
  Sequent left = conclusion;   // Gamma |- C, Delta
  left.succ.insert(left.succ.begin(), app.cut_formula);
  Sequent right = conclusion;  // Gamma, C |- Delta
  right.ante.insert(right.ante.begin(), app.cut_formula);
  if (!seq_equal(premises[0], left))
    res.fail("Cut first premise should be " + left.str() + ", got " +
             premises[0].str());
  if (!seq_equal(premises[1], right))
    res.fail("Cut second premise should be " + right.str() + ", got " +
             premises[1].str());
}

static void check_ax(const Sequent& conclusion,
                     const std::vector<Sequent>& premises, StepCheck& res) {
  if (!premises.empty()) {
    res.fail("Ax expects no premises");
    return;
  }
  for (const Formula& f : conclusion.ante)
    for (const Formula& g : conclusion.succ)
      if (f == g) return;
  res.fail("Ax requires a formula occurring on both sides of the sequent");
}

static void check_quantifier(const Sequent& conclusion, const RuleApp& app,
                             const std::vector<Sequent>& premises, bool all_right,
                             CheckMode mode, StepCheck& res) {
  const char* name = all_right ? "AllR" : "ExL";
  if (premises.size() != 1) {
    res.fail(std::string(name) + " expects exactly one premise");
    return;
  }
  if (mode == CheckMode::Strict) {
    std::set<std::string> cv = free_vars(conclusion);
    std::set<std::string> seen;
    for (const std::string& v : app.fresh_vars) {
      if (cv.count(v)) {
        res.fail(std::string(name) + " variable '" + v +
                 "' is free in the conclusion");
        return;
      }
      if (!seen.insert(v).second) {
        res.fail(std::string(name) + " lists variable '" + v + "' twice");
        return;
      }
    }
  }
  const std::vector<Formula>& side = all_right ? conclusion.succ : conclusion.ante;
  Formula::Kind kind = all_right ? Formula::Kind::Forall : Formula::Kind::Exists;
  for (size_t i = 0; i < side.size(); ++i) {
    const Formula& f = side[i];
    if (f.kind != kind || f.binders.size() != app.fresh_vars.size()) continue;
    Subst open;
    for (size_t k = 0; k < f.binders.size(); ++k)
      open.bind(f.binders[k], Term::mkvar(app.fresh_vars[k]));
    Sequent expected = conclusion;
    (all_right ? expected.succ : expected.ante)[i] = open(f.sub[0]);
    if (seq_equal(expected, premises[0])) return;
  }
  res.fail(std::string(name) +
           ": no quantified formula yields the given premise with variables (" +
           [&] {
             std::string s;
             for (size_t i = 0; i < app.fresh_vars.size(); ++i) {
               if (i) s += ' ';
               s += app.fresh_vars[i];
             }
             return s;
           }() +
           ")");
}

StepCheck validate_step(const InductiveDefSet& defs, const Sequent& conclusion,
                        const RuleApp& app, const std::vector<Sequent>& premises,
                        const std::vector<NodeId>& children, CheckMode mode) {
  StepCheck res;
  switch (app.tag) {
    case RuleTag::Subst:
      check_subst(conclusion, app, premises, res);
      break;
    case RuleTag::Gen:
      check_gen(conclusion, app, premises, res);
      break;
    case RuleTag::Case:
      check_case(defs, conclusion, app, premises, children, mode, res);
      break;
    case RuleTag::Unfold:
      check_unfold(defs, conclusion, app, premises, res);
      break;
    case RuleTag::Wk:
      check_wk(conclusion, app, premises, res);
      break;
    case RuleTag::Cut:
      check_cut(conclusion, app, premises, res);
      break;
    case RuleTag::Ax:
      check_ax(conclusion, premises, res);
      break;
    case RuleTag::AllR:
      check_quantifier(conclusion, app, premises, true, mode, res);
      break;
    case RuleTag::ExL:
      check_quantifier(conclusion, app, premises, false, mode, res);
      break;
    case RuleTag::Generic:
      // Named external rules are trusted structurally; the trace-preserving
      // flag is consumed by the trace construction.
      break;
  }
  return res;
}

}  // namespace cyclo
