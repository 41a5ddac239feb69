#pragma once

// The digraph view of a tree-set: forward arrows conclusion->premise plus
// one backlink per bud, substitution annotations, strongly connected
// components, root-to-bud paths and their cumulative substitutions, and the
// instantiated-step evidence lists used by the soundness reports.

#include <optional>
#include <string>
#include <vector>

#include "cyclo/format.hpp"
#include "cyclo/normalize.hpp"

namespace cyclo {

enum class ArrowKind { Forward, Backlink };

struct Arrow {
  NodeId from;
  NodeId to;
  ArrowKind kind = ArrowKind::Forward;
  // Backlinks and arrows leaving Subst nodes carry no annotation; arrows
  // leaving Gen nodes carry {t -> u}; all other forward arrows carry the
  // identity substitution (stored empty, it binds nothing).
  std::optional<Subst> label;
};

enum class DigraphMode {
  Analysis,  // requires normal form; rb-path queries allowed
  Render,    // any validated tree-set; drawing only
};

struct Digraph {
  const ProofTreeSet* ts = nullptr;  // not owned; must outlive the digraph
  std::vector<Arrow> arrows;
  std::vector<std::vector<NodeId>> sccs;  // each sorted; ordered by min id
  std::map<NodeId, size_t> scc_of;

  std::vector<size_t> non_singleton_sccs() const;
};

Digraph build_digraph(const ProofTreeSet& ts,
                      DigraphMode mode = DigraphMode::Analysis);

// A root-to-bud path [R,...,H,B] with no other bud. In a normalized
// tree-set H (the IH-node) is the Subst step closing the bud.
struct RbPath {
  std::vector<NodeId> nodes;
  Subst theta_c;  // cumulative substitution of [R,...,H]
  size_t scc = 0;

  const NodeId& root() const { return nodes.front(); }
  const NodeId& bud() const { return nodes.back(); }
  const NodeId& ih_node() const { return nodes[nodes.size() - 2]; }
};

// All rb-paths whose root and bud lie in the given SCC, ordered by bud id.
// Within a tree the root-to-bud path is unique, so there is exactly one per
// qualifying bud.
std::vector<RbPath> rb_paths(const Digraph& g, size_t scc_index);

// Composition of the arrow annotations along [N^1,...,N^n] (the final
// Subst arrow into the bud is excluded; identity entries are extensional).
Subst cumulative_subst(const Digraph& g, const std::vector<NodeId>& path);

struct StepEvidence {
  NodeId node;
  std::string rule;         // rule name as re-validated (Gen may become Wk)
  bool replaced_by_wk = false;
  StepCheck check;
};

struct CumulativeList {
  std::vector<Sequent> sequents;    // [S(N^1)[th_1], ..., S(N^n), S(B)]
  std::vector<StepEvidence> steps;  // one per non-bud path node
  bool ok = true;
};

// Instantiates every step of the rb-path with the suffix of the cumulative
// substitution starting at it and re-validates the step (Gen steps whose
// instantiated principal becomes u=u are re-validated as Wk). Failure
// indicates an invalid input or an implementation fault.
CumulativeList cumulative_list(const Digraph& g, const InductiveDefSet& defs,
                               const RbPath& path);

// Graphviz rendering: nodes "id: sequent", forward arrows solid (labelled
// by their substitution when annotated), backlinks dashed.
std::string to_dot(const Digraph& g);

}  // namespace cyclo
