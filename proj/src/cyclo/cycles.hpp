#pragma once

// The minimal-cycle criterion over chained root-to-bud paths, used as an
// independent oracle against the per-SCC discharge check, plus the
// cycle-counting utilities behind the constraint-redundancy comparison.

#include <cstdint>
#include <string>
#include <vector>

#include "cyclo/checker.hpp"
#include "cyclo/digraph.hpp"

namespace cyclo {

// One root-to-bud path of the tree-set (unique per bud).
struct SkeletonPath {
  NodeId root;
  NodeId bud;
  std::vector<NodeId> nodes;  // root .. bud
};

// The chaining structure of root-to-bud paths: an edge i -> j whenever the
// companion of path i's bud is the root of path j.
struct Skeleton {
  std::vector<SkeletonPath> paths;  // ordered by bud id
  std::vector<std::vector<size_t>> adj;
};

Skeleton build_skeleton(const ProofTreeSet& ts);

// All simple cycles of a directed graph given by adjacency lists (self-loops
// allowed), each rotated so its smallest vertex comes first, sorted.
std::vector<std::vector<size_t>> simple_cycles(
    const std::vector<std::vector<size_t>>& adj);

// An n-cycle: a circular list of root-to-bud paths where each bud's
// companion is the next path's root. Cycles repeating a root are excluded,
// which also keeps the underlying node cycles repetition-free.
struct NCycle {
  std::vector<size_t> paths;  // indices into the skeleton's path list
};

// Requires a digraph built in analysis mode (normalized tree-set).
std::vector<NCycle> enumerate_ncycles(const Digraph& g);

// Closed form for the number of simple cycles (length >= 2) of the complete
// digraph on n vertices: the sum over k = 2..n of n!/((n-k)! k). Throws
// std::overflow_error when the count exceeds 64 bits.
std::uint64_t complete_digraph_cycle_count(unsigned n);

struct CycleConstraint {
  size_t path_index = 0;
  NodeId bud;
  bool discharged = false;
  std::string failure;  // empty when discharged
};

struct CycleEntry {
  NCycle cycle;
  std::vector<CycleConstraint> constraints;  // one per constituent path
  bool discharged = true;
};

struct PriorCriterionReport {
  bool sound = true;
  Skeleton skeleton;
  std::vector<CycleEntry> cycles;
};

// The minimal-cycle criterion: every n-cycle must discharge the induction
// hypothesis of every constituent path [N^1, ..., N^p]: S(N^{p-1}) must be
// derivable from S(N^1)[theta_c] along the path (the node above the bud is
// always the substitution step in normal form). Shared paths are checked
// once and their result is reported in every cycle containing them.
PriorCriterionReport check_prior_criterion(const OrderingContext& ord,
                                           const MeasureSpec& ms,
                                           const InductiveDefSet& defs,
                                           const Digraph& g);

struct Redundancy {
  size_t distinct = 0;  // one per bud in a non-singleton SCC
  size_t total = 0;     // constraint instances summed over all n-cycles
};

// distinct <= total always; the inequality is strict exactly when some path
// lies on more than one n-cycle.
Redundancy redundancy_report(const Digraph& g);

}  // namespace cyclo
