#pragma once

// Inductive definition sets, the rule schemas of the sequent calculus, and
// per-node rule-application validation.

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "cyclo/ids.hpp"
#include "cyclo/terms.hpp"

namespace cyclo {

class RuleError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// One production axiom: ordinary /\ inductive body atoms imply the head.
struct AxiomDef {
  std::string name;
  std::vector<Atom> ordinary;   // ordinary-predicate body atoms
  std::vector<Atom> inductive;  // inductive-predicate body atoms
  Atom head;                    // inductive-predicate head

  std::set<std::string> vars() const;
};

struct InductiveDefSet {
  Signature sig;
  std::vector<AxiomDef> axioms;

  const AxiomDef* axiom(const std::string& name) const;
  std::vector<const AxiomDef*> axioms_for(const std::string& pred) const;
};

enum class RuleTag { Subst, Gen, Case, Unfold, Wk, Cut, Ax, AllR, ExL, Generic };

const char* rule_name(RuleTag tag);

// A rule application attached to an internal proof node. Only the fields of
// the active tag are meaningful.
struct RuleApp {
  RuleTag tag = RuleTag::Ax;

  Subst subst;                                            // Subst
  Atom gen_principal;                                     // Gen: t = u
  Atom case_principal;                                    // Case
  std::vector<std::pair<std::string, NodeId>> branches;   // Case: axiom -> child
  std::string unfold_axiom;                               // Unfold
  Atom unfold_principal;                                  // Unfold
  std::vector<Formula> wk_dropped;                        // Wk
  Formula cut_formula;                                    // Cut
  std::vector<std::string> fresh_vars;                    // AllR / ExL
  std::string generic_name;                               // Generic
  bool trace_preserving = true;                           // Generic
};

// One entry of a case distinction: the axiom instance obtained by renaming
// the axiom's variables fresh. The premise built from it replaces the
// principal atom by equations + ordinary atoms + descendants.
struct CaseBranch {
  std::string axiom;
  std::vector<Atom> equations;    // principal arg_i = renamed head arg_i
  std::vector<Atom> ordinary;
  std::vector<Atom> descendants;  // renamed inductive body atoms
};

// All case distinctions of an inductive principal atom, one per defining
// axiom, with axiom variables renamed fresh w.r.t. `avoid`.
// Throws RuleError if the predicate is not inductive or has no axiom.
std::vector<CaseBranch> case_distinctions(const InductiveDefSet& defs,
                                          const Atom& principal,
                                          const std::set<std::string>& avoid);

// Builds the premise sequent of one case branch: equations, ordinary atoms
// and descendants followed by the conclusion's remaining antecedents (the
// principal is consumed); succedents unchanged.
Sequent case_premise(const Sequent& conclusion, const Atom& principal,
                     const CaseBranch& branch);

// Premises of a right-unfolding step: the principal succedent atom is
// replaced by each instantiated body atom (one premise per body atom, none
// for unconditional axioms). `delta_rest` is the succedent without the
// principal. Throws RuleError if the axiom is unknown or its head does not
// match the principal. Body variables not bound by the head match are kept
// verbatim; a note is appended to `warnings` when that happens.
std::vector<Sequent> unfold_premises(const InductiveDefSet& defs,
                                     const std::string& axiom_name,
                                     const std::vector<Formula>& gamma,
                                     const Atom& principal,
                                     const std::vector<Formula>& delta_rest,
                                     std::vector<std::string>* warnings = nullptr);

enum class CheckMode {
  Strict,    // author-facing validation, freshness side conditions enforced
  Evidence,  // re-validation of instantiated steps: freshness waived and
             // case variables may be realized by arbitrary terms
};

struct StepCheck {
  bool ok = true;
  std::vector<std::string> errors;
  std::vector<std::string> warnings;
  // Case only: premise index -> antecedent positions (in that premise) of
  // the realized case descendants (drives the progress edges of traces).
  std::map<size_t, std::vector<size_t>> case_descendants;

  void fail(std::string msg) {
    ok = false;
    errors.push_back(std::move(msg));
  }
};

// Checks that `premises` (aligned with `children`) are exactly what the rule
// application prescribes for `conclusion`.
StepCheck validate_step(const InductiveDefSet& defs, const Sequent& conclusion,
                        const RuleApp& app, const std::vector<Sequent>& premises,
                        const std::vector<NodeId>& children,
                        CheckMode mode = CheckMode::Strict);

}  // namespace cyclo
