#pragma once

// Rewrites a pre-proof tree-set into the normal form consumed by the
// soundness analysis: every companion is a tree root and every bud is the
// premise of a Subst step (its parent is the IH-node).

#include <string>
#include <vector>

#include "cyclo/format.hpp"

namespace cyclo {

struct AuditEntry {
  int op = 0;                   // 1, 2 or 3
  NodeId target;                // the node the operation fired on
  std::vector<NodeId> created;  // new ids, duplicates first
  std::string str() const;
};

// Applicability predicates for the three rewriting operations.
bool op1_applicable(const ProofTreeSet& ts, const NodeId& id);
bool op2_applicable(const ProofTreeSet& ts, const NodeId& id);
bool op3_applicable(const ProofTreeSet& ts, const NodeId& id);

// The operations themselves. Each returns the rewritten tree-set and throws
// std::invalid_argument if its precondition does not hold.
//
// op1: `id` is a non-bud premise of a Subst step. Its subtree is detached
// into a new tree rooted by a duplicate; the original node becomes a bud
// whose companion is the duplicate.
ProofTreeSet op1_detach_subst_premise(const ProofTreeSet& ts, const NodeId& id,
                                      AuditEntry* audit = nullptr);
// op2: `id` is a non-root companion. Its subtree is detached into a new tree
// rooted by a duplicate; in the original position the node becomes the
// conclusion of a Subst step with the empty substitution over a new bud, and
// every bud previously mapped to `id` is remapped to the duplicate.
ProofTreeSet op2_detach_companion(const ProofTreeSet& ts, const NodeId& id,
                                  AuditEntry* audit = nullptr);
// op3: `id` is a bud whose parent rule is not Subst. A Subst step with the
// empty substitution is inserted: the old bud node becomes its conclusion
// and a new bud with the same sequent and companion becomes its premise.
ProofTreeSet op3_pad_bud(const ProofTreeSet& ts, const NodeId& id,
                         AuditEntry* audit = nullptr);

struct NormalizeResult {
  ProofTreeSet trees;
  std::vector<AuditEntry> log;
};

// Exhaustive rewriting: op2 first, then op1, then op3, each smallest-id
// first, looping until no operation applies. Terminates within 3x the
// initial node count many operations.
NormalizeResult normalize(const ProofTreeSet& ts);

struct NormalFormReport {
  bool ok = true;
  std::vector<std::string> violations;
};

// Verifies the normal-form shape: every bud's parent is a Subst step, every
// Subst premise is a bud (Subst-node == IH-node), every companion is a tree
// root, and each root-to-bud path contains no Subst premise besides its bud.
NormalFormReport check_normal_form(const ProofTreeSet& ts);

}  // namespace cyclo
