#pragma once

// Traces along paths, the derives-from relation between inductive antecedent
// atom occurrences, measured ordering derivability between sequent instances,
// induction-hypothesis discharge, and the overall soundness verdict.

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "cyclo/digraph.hpp"
#include "cyclo/format.hpp"
#include "cyclo/normalize.hpp"
#include "cyclo/ordering.hpp"

namespace cyclo {

// ------------------------------------------------------------------- traces

// One vertex of a trace graph: an IAA occurrence addressed by its position
// along the path and its index into that sequent's IAA occurrence list.
struct TraceVertex {
  size_t pos = 0;
  size_t occ = 0;
  auto operator<=>(const TraceVertex&) const = default;
};

// A trace step between consecutive positions p -> p+1.
struct TraceEdge {
  size_t from_occ = 0;
  size_t to_occ = 0;
  bool progress = false;
};

struct TraceGraph {
  std::vector<NodeId> nodes;  // the path; one vertex layer per node
  // occurrences[p] = IAA occurrences of S(nodes[p]): (antecedent index, atom)
  std::vector<std::vector<std::pair<size_t, Atom>>> occurrences;
  std::vector<std::vector<TraceEdge>> edges;  // edges[p] connect p to p+1

  size_t last() const { return nodes.size() - 1; }
  const Atom& atom(const TraceVertex& v) const {
    return occurrences[v.pos][v.occ].second;
  }
};

// Builds the trace graph of a path whose consecutive nodes are connected by
// forward arrows (conclusion to premise) or backlinks (bud to companion).
// Edges per step: Subst(theta) relates u to v when atom_v[theta] == atom_u;
// Gen(t=u) relates u to v when atom_v == atom_u[{t->u}]; a Case step sends
// its principal occurrence (the first one equal to the principal atom) to
// each realized case descendant as a progress edge and every other
// occurrence to equal premise atoms; all other steps and backlinks relate
// equal atoms. A Generic step that is not trace-preserving cannot carry
// traces: RuleError.
TraceGraph trace_graph(const InductiveDefSet& defs, const ProofTreeSet& ts,
                       const std::vector<NodeId>& path);

struct DerivesResult {
  bool reachable = false;
  size_t min_progress = 0;       // fewest progress points over connecting traces
  size_t reachable_targets = 0;  // last-position occurrences reachable from source
};

// Whether the target occurrence derives from the source occurrence: the
// source position must be strictly smaller and a chain of trace edges must
// connect them. reachable_targets is filled regardless of `target`.
DerivesResult derives_from(const TraceGraph& tg, TraceVertex source,
                           TraceVertex target);

// ----------------------------------------------------------------- measures

// One selected measure occurrence of a sequent instance.
struct MeasureOcc {
  size_t ante_pos = 0;  // position in the antecedent list
  size_t occ = 0;       // index into iaa_occurrences of the sequent
  Atom atom;            // the instantiated atom
};

// The measure of s[inst]: the measure spec selects IAA occurrences of the
// instantiated sequent. Occurrence positions are equally valid against the
// uninstantiated sequent, which instantiation leaves aligned.
std::vector<MeasureOcc> measure_of(const MeasureSpec& ms, const Signature& sig,
                                   const Sequent& s, const Subst& inst);

// ----------------------------------------------- measured-order derivability

struct TraceWitness {
  std::vector<TraceVertex> vertices;  // one per position, source .. target
  std::vector<Atom> atoms;            // uninstantiated atom at each vertex
  size_t progress = 0;
};

struct MatchedPair {
  MeasureOcc from;
  MeasureOcc to;
  bool cancelled = false;  // deleted as syntactically equal; else residual
  TraceWitness trace;
};

struct Derivability {
  bool ok = false;
  std::string failure;             // first unmet clause when not ok
  std::vector<Atom> measure_from;  // instantiated measure multisets
  std::vector<Atom> measure_to;
  std::vector<MatchedPair> pairs;  // cancelled pairs then residual pairs
};

// Whether S(to)[to_inst] is derivable from S(from)[from_inst] in the measured
// ordering along `path` (from = path.front(), to = path.back()). After the
// pairwise deletion of equal instantiated measure atoms (smallest occurrence
// indices first), (i) each deleted pair's target occurrence must derive from
// its source occurrence and be the unique measure occurrence doing so,
// (ii) each residual target atom must be dominated by a strictly greater
// residual source atom it derives from, and (iii) at least one source atom
// must remain, so the instantiated measures strictly decrease.
Derivability pi_derivable(const OrderingContext& ord, const MeasureSpec& ms,
                          const InductiveDefSet& defs, const ProofTreeSet& ts,
                          const std::vector<NodeId>& path,
                          const Subst& from_inst, const Subst& to_inst);

// -------------------------------------------------------------- IH discharge

struct Constraint {
  NodeId bud;
  NodeId companion;
  size_t scc = 0;
  std::vector<NodeId> path;  // [R, ..., H, B]
  Subst theta_c;
  Derivability deriv;
  bool discharged = false;
};

// The discharge check of one rb-path: S(H) must be derivable from
// S(R)[theta_c] along [R, ..., H].
Constraint ih_discharged(const OrderingContext& ord, const MeasureSpec& ms,
                         const InductiveDefSet& defs, const Digraph& g,
                         const RbPath& rb);

// -------------------------------------------------------------- the pipeline

enum class Stage { Parse, Validate, Normalize, Digraph, Discharge };

const char* stage_name(Stage s);

class StageError : public std::runtime_error {
public:
  StageError(Stage stage, const std::string& what)
      : std::runtime_error(what), stage(stage) {}
  Stage stage;
};

// Validates every inner node of the tree-set (premises = child sequents).
// Returns the collected warnings; throws StageError(Validate) naming the
// smallest-id offending node if any step fails.
std::vector<std::string> validate_tree_set(const InductiveDefSet& defs,
                                           const ProofTreeSet& ts,
                                           CheckMode mode = CheckMode::Strict);

struct SoundnessReport {
  bool sound = false;
  std::vector<std::string> warnings;  // from validating the normalized form
  std::vector<AuditEntry> normalize_log;
  std::shared_ptr<const ProofTreeSet> normalized;
  Digraph graph;                        // views *normalized
  std::vector<Constraint> constraints;  // sorted by bud id
  size_t discharged_count = 0;
};

// Validate (strict) -> normalize -> validate -> digraph -> one discharge
// constraint per bud of every non-singleton SCC; SOUND iff all constraints
// are discharged. `jobs` bounds how many constraints are checked
// concurrently; the report order never depends on it.
SoundnessReport check_soundness(const ProofFile& pf, unsigned jobs = 1);

}  // namespace cyclo
