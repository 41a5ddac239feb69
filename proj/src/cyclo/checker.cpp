#include "cyclo/checker.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <limits>
#include <map>
#include <set>
#include <thread>

namespace cyclo {

namespace {

constexpr size_t kUnreachable = std::numeric_limits<size_t>::max();

void add_equality_edges(const std::vector<std::pair<size_t, Atom>>& occs_a,
                        const std::vector<std::pair<size_t, Atom>>& occs_b,
                        std::vector<TraceEdge>& out) {
  for (size_t u = 0; u < occs_a.size(); ++u)
    for (size_t v = 0; v < occs_b.size(); ++v)
      if (occs_b[v].second == occs_a[u].second)
        out.push_back({u, v, false});
}

Subst gen_subst(const RuleApp& rule) {
  Subst th;
  th.bind(rule.gen_principal.args[0].head, rule.gen_principal.args[1]);
  return th;
}

}  // namespace

TraceGraph trace_graph(const InductiveDefSet& defs, const ProofTreeSet& ts,
                       const std::vector<NodeId>& path) {
  if (path.empty()) throw std::invalid_argument("trace_graph: empty path");
  TraceGraph tg;
  tg.nodes = path;
  for (const NodeId& id : path)
    tg.occurrences.push_back(iaa_occurrences(ts.node(id).sequent, defs.sig));
  if (path.size() >= 2) tg.edges.resize(path.size() - 1);

  for (size_t p = 0; p + 1 < path.size(); ++p) {
    const ProofNode& here = ts.node(path[p]);
    const ProofNode& next = ts.node(path[p + 1]);
    const auto& occs_a = tg.occurrences[p];
    const auto& occs_b = tg.occurrences[p + 1];
    std::vector<TraceEdge>& out = tg.edges[p];

    if (here.kind == NodeKind::Bud) {
      if (!(here.companion == next.id))
        throw std::invalid_argument("trace_graph: the step from bud " +
                                    here.id.str() + " to " + next.id.str() +
                                    " does not follow the backlink");
      add_equality_edges(occs_a, occs_b, out);
      continue;
    }

    auto cit = std::find(here.children.begin(), here.children.end(), next.id);
    if (cit == here.children.end())
      throw std::invalid_argument("trace_graph: " + next.id.str() +
                                  " is not a premise of " + here.id.str());
    size_t pidx = static_cast<size_t>(cit - here.children.begin());

    switch (here.rule.tag) {
      case RuleTag::Subst: {
        const Subst& th = here.rule.subst;
        for (size_t u = 0; u < occs_a.size(); ++u)
          for (size_t v = 0; v < occs_b.size(); ++v)
            if (th(occs_b[v].second) == occs_a[u].second)
              out.push_back({u, v, false});
        break;
      }
      case RuleTag::Gen: {
        Subst th = gen_subst(here.rule);
        for (size_t u = 0; u < occs_a.size(); ++u) {
          Atom image = th(occs_a[u].second);
          for (size_t v = 0; v < occs_b.size(); ++v)
            if (occs_b[v].second == image) out.push_back({u, v, false});
        }
        break;
      }
      case RuleTag::Case: {
        std::vector<Sequent> premises;
        premises.reserve(here.children.size());
        for (const NodeId& c : here.children)
          premises.push_back(ts.node(c).sequent);
        StepCheck sc = validate_step(defs, here.sequent, here.rule, premises,
                                     here.children, CheckMode::Strict);
        if (!sc.ok)
          throw RuleError(
              "trace_graph: the case step at node " + here.id.str() +
              " does not validate: " +
              (sc.errors.empty() ? "unknown violation" : sc.errors.front()));
        auto dit = sc.case_descendants.find(pidx);
        if (dit == sc.case_descendants.end())
          throw std::logic_error("trace_graph: no case branch covers premise " +
                                 next.id.str());

        // The principal occurrence is the first one equal to the principal
        // atom; the step consumes it into its case descendants.
        size_t principal = kUnreachable;
        for (size_t u = 0; u < occs_a.size(); ++u)
          if (occs_a[u].second == here.rule.case_principal) {
            principal = u;
            break;
          }
        if (principal == kUnreachable)
          throw std::logic_error("trace_graph: case principal " +
                                 here.rule.case_principal.str() +
                                 " missing from the antecedent of node " +
                                 here.id.str());

        std::map<size_t, size_t> occ_of_pos;
        for (size_t v = 0; v < occs_b.size(); ++v)
          occ_of_pos[occs_b[v].first] = v;
        for (size_t pos : dit->second) {
          auto oit = occ_of_pos.find(pos);
          if (oit == occ_of_pos.end())
            throw std::logic_error(
                "trace_graph: case descendant position is not an inductive "
                "antecedent atom in premise " +
                next.id.str());
          out.push_back({principal, oit->second, true});
        }
        for (size_t u = 0; u < occs_a.size(); ++u) {
          if (u == principal) continue;
          for (size_t v = 0; v < occs_b.size(); ++v)
            if (occs_b[v].second == occs_a[u].second)
              out.push_back({u, v, false});
        }
        break;
      }
      case RuleTag::Generic: {
        if (!here.rule.trace_preserving)
          throw RuleError("node " + here.id.str() + ": rule '" +
                          here.rule.generic_name +
                          "' is not trace-preserving; traces across it are "
                          "undefined");
        add_equality_edges(occs_a, occs_b, out);
        break;
      }
      default:
        add_equality_edges(occs_a, occs_b, out);
        break;
    }
  }
  return tg;
}

namespace {

struct ReachInfo {
  size_t src_pos = 0;
  std::vector<std::vector<size_t>> dist;    // [pos][occ] min progress count
  std::vector<std::vector<size_t>> parent;  // [pos][occ] best predecessor occ
};

ReachInfo reach_from(const TraceGraph& tg, TraceVertex src) {
  if (src.pos >= tg.nodes.size() || src.occ >= tg.occurrences[src.pos].size())
    throw std::invalid_argument("reach_from: occurrence out of range");
  ReachInfo ri;
  ri.src_pos = src.pos;
  ri.dist.resize(tg.nodes.size());
  ri.parent.resize(tg.nodes.size());
  for (size_t p = 0; p < tg.nodes.size(); ++p) {
    ri.dist[p].assign(tg.occurrences[p].size(), kUnreachable);
    ri.parent[p].assign(tg.occurrences[p].size(), kUnreachable);
  }
  ri.dist[src.pos][src.occ] = 0;
  for (size_t p = src.pos; p + 1 < tg.nodes.size(); ++p) {
    for (const TraceEdge& e : tg.edges[p]) {
      size_t d = ri.dist[p][e.from_occ];
      if (d == kUnreachable) continue;
      size_t nd = d + (e.progress ? 1 : 0);
      if (nd < ri.dist[p + 1][e.to_occ] ||
          (nd == ri.dist[p + 1][e.to_occ] &&
           e.from_occ < ri.parent[p + 1][e.to_occ])) {
        ri.dist[p + 1][e.to_occ] = nd;
        ri.parent[p + 1][e.to_occ] = e.from_occ;
      }
    }
  }
  return ri;
}

// Reconstructs the minimal-progress trace from src to tgt and re-checks every
// step against the step's own relation (equal atoms everywhere except
// through substitutions and at progress points).
TraceWitness build_witness(const ProofTreeSet& ts, const TraceGraph& tg,
                           const ReachInfo& ri, TraceVertex src,
                           TraceVertex tgt) {
  if (ri.dist[tgt.pos][tgt.occ] == kUnreachable)
    throw std::logic_error("build_witness: target not reachable");
  TraceWitness w;
  w.progress = ri.dist[tgt.pos][tgt.occ];

  std::vector<size_t> occs(tgt.pos - src.pos + 1);
  size_t cur = tgt.occ;
  for (size_t p = tgt.pos; p > src.pos; --p) {
    occs[p - src.pos] = cur;
    cur = ri.parent[p][cur];
    if (cur == kUnreachable)
      throw std::logic_error("build_witness: broken predecessor chain");
  }
  occs[0] = cur;
  if (cur != src.occ)
    throw std::logic_error("build_witness: trace does not start at the source");

  for (size_t i = 0; i < occs.size(); ++i) {
    TraceVertex v{src.pos + i, occs[i]};
    w.vertices.push_back(v);
    w.atoms.push_back(tg.atom(v));
  }

  for (size_t i = 0; i + 1 < w.vertices.size(); ++i) {
    const TraceEdge* edge = nullptr;
    for (const TraceEdge& e : tg.edges[w.vertices[i].pos])
      if (e.from_occ == w.vertices[i].occ &&
          e.to_occ == w.vertices[i + 1].occ) {
        edge = &e;
        break;
      }
    if (!edge) throw std::logic_error("build_witness: unrecorded trace step");

    const ProofNode& here = ts.node(tg.nodes[w.vertices[i].pos]);
    const Atom& a = w.atoms[i];
    const Atom& b = w.atoms[i + 1];
    bool ok = true;
    if (here.kind == NodeKind::Bud) {
      ok = (a == b);
    } else {
      switch (here.rule.tag) {
        case RuleTag::Subst:
          ok = (here.rule.subst(b) == a);
          break;
        case RuleTag::Gen:
          ok = (b == gen_subst(here.rule)(a));
          break;
        case RuleTag::Case:
          ok = edge->progress || (a == b);
          break;
        default:
          ok = (a == b);
          break;
      }
    }
    if (!ok)
      throw std::logic_error("build_witness: step at node " + here.id.str() +
                             " relates " + a.str() + " to " + b.str() +
                             " without progress or the step substitution");
  }
  return w;
}

}  // namespace

DerivesResult derives_from(const TraceGraph& tg, TraceVertex source,
                           TraceVertex target) {
  if (source.pos >= tg.nodes.size() ||
      source.occ >= tg.occurrences[source.pos].size())
    throw std::invalid_argument("derives_from: source out of range");
  if (target.pos >= tg.nodes.size() ||
      target.occ >= tg.occurrences[target.pos].size())
    throw std::invalid_argument("derives_from: target out of range");

  DerivesResult r;
  ReachInfo ri = reach_from(tg, source);
  if (tg.last() > source.pos)
    for (size_t d : ri.dist[tg.last()])
      if (d != kUnreachable) ++r.reachable_targets;
  if (source.pos < target.pos &&
      ri.dist[target.pos][target.occ] != kUnreachable) {
    r.reachable = true;
    r.min_progress = ri.dist[target.pos][target.occ];
  }
  return r;
}

std::vector<MeasureOcc> measure_of(const MeasureSpec& ms, const Signature& sig,
                                   const Sequent& s, const Subst& inst) {
  Sequent si = inst(s);
  std::vector<size_t> sel = ms.select(si, sig);
  auto occs = iaa_occurrences(si, sig);
  std::map<size_t, size_t> occ_of_pos;
  for (size_t i = 0; i < occs.size(); ++i) occ_of_pos[occs[i].first] = i;

  std::vector<MeasureOcc> out;
  out.reserve(sel.size());
  for (size_t pos : sel) {
    auto it = occ_of_pos.find(pos);
    if (it == occ_of_pos.end())
      throw std::logic_error("measure_of: selected antecedent position " +
                             std::to_string(pos) +
                             " is not an inductive antecedent atom");
    out.push_back({pos, it->second, occs[it->second].second});
  }
  return out;
}

Derivability pi_derivable(const OrderingContext& ord, const MeasureSpec& ms,
                          const InductiveDefSet& defs, const ProofTreeSet& ts,
                          const std::vector<NodeId>& path,
                          const Subst& from_inst, const Subst& to_inst) {
  if (path.empty()) throw std::invalid_argument("pi_derivable: empty path");

  Derivability out;
  TraceGraph tg = trace_graph(defs, ts, path);
  std::vector<MeasureOcc> from_m =
      measure_of(ms, defs.sig, ts.node(path.front()).sequent, from_inst);
  std::vector<MeasureOcc> to_m =
      measure_of(ms, defs.sig, ts.node(path.back()).sequent, to_inst);
  for (const MeasureOcc& m : from_m) out.measure_from.push_back(m.atom);
  for (const MeasureOcc& m : to_m) out.measure_to.push_back(m.atom);

  // Pairwise deletion of equal instantiated atoms, smallest indices first.
  std::vector<bool> from_cancelled(from_m.size(), false);
  std::vector<bool> to_cancelled(to_m.size(), false);
  std::vector<std::pair<size_t, size_t>> cancelled;
  for (size_t j = 0; j < to_m.size(); ++j)
    for (size_t i = 0; i < from_m.size(); ++i)
      if (!from_cancelled[i] && from_m[i].atom == to_m[j].atom) {
        from_cancelled[i] = true;
        to_cancelled[j] = true;
        cancelled.push_back({i, j});
        break;
      }

  std::vector<size_t> residual_from, residual_to;
  for (size_t i = 0; i < from_m.size(); ++i)
    if (!from_cancelled[i]) residual_from.push_back(i);
  for (size_t j = 0; j < to_m.size(); ++j)
    if (!to_cancelled[j]) residual_to.push_back(j);

  if (residual_from.empty()) {
    out.failure =
        residual_to.empty()
            ? "no strict decrease: the measures cancel completely"
            : "no strict decrease: the source measure cancels completely, "
              "leaving " +
                  std::to_string(residual_to.size()) +
                  " target atom(s) undominated";
    return out;
  }

  size_t lastp = tg.last();
  std::map<size_t, ReachInfo> reach;
  auto reach_of = [&](size_t occ) -> const ReachInfo& {
    auto it = reach.find(occ);
    if (it == reach.end())
      it = reach.emplace(occ, reach_from(tg, {0, occ})).first;
    return it->second;
  };

  // Deleted pairs: the target copy must derive from the source copy and be
  // the unique measure occurrence that does.
  for (auto [i, j] : cancelled) {
    const ReachInfo& ri = reach_of(from_m[i].occ);
    if (!(lastp > 0 && ri.dist[lastp][to_m[j].occ] != kUnreachable)) {
      out.failure = "cancelled pair " + from_m[i].atom.str() +
                    ": the deleted target copy does not derive from its "
                    "source copy";
      return out;
    }
    size_t deriving = 0;
    for (const MeasureOcc& mo : to_m)
      if (ri.dist[lastp][mo.occ] != kUnreachable) ++deriving;
    if (deriving != 1) {
      out.failure = "cancelled pair " + from_m[i].atom.str() + ": " +
                    std::to_string(deriving) +
                    " measure atoms derive from the source copy; the deleted "
                    "target must be the only one";
      return out;
    }
    MatchedPair mp;
    mp.from = from_m[i];
    mp.to = to_m[j];
    mp.cancelled = true;
    mp.trace =
        build_witness(ts, tg, ri, {0, from_m[i].occ}, {lastp, to_m[j].occ});
    out.pairs.push_back(std::move(mp));
  }

  // Residual targets: dominated by a strictly greater residual source atom
  // they derive from.
  for (size_t j : residual_to) {
    bool matched = false;
    for (size_t i : residual_from) {
      if (!rpo_less(ord, to_m[j].atom, from_m[i].atom)) continue;
      const ReachInfo& ri = reach_of(from_m[i].occ);
      if (!(lastp > 0 && ri.dist[lastp][to_m[j].occ] != kUnreachable))
        continue;
      MatchedPair mp;
      mp.from = from_m[i];
      mp.to = to_m[j];
      mp.cancelled = false;
      mp.trace =
          build_witness(ts, tg, ri, {0, from_m[i].occ}, {lastp, to_m[j].occ});
      out.pairs.push_back(std::move(mp));
      matched = true;
      break;
    }
    if (!matched) {
      out.failure = "residual atom " + to_m[j].atom.str() +
                    " is not dominated: no residual source atom is both "
                    "greater in the path ordering and an origin of it in the "
                    "trace graph";
      return out;
    }
  }

  // A successful derivation must strictly decrease the instantiated measures
  // in the multiset extension; anything else is an implementation fault.
  if (!multiset_less(ord, out.measure_to, out.measure_from))
    throw std::logic_error(
        "pi_derivable: witnessed derivation without strict multiset decrease");

  out.ok = true;
  return out;
}

Constraint ih_discharged(const OrderingContext& ord, const MeasureSpec& ms,
                         const InductiveDefSet& defs, const Digraph& g,
                         const RbPath& rb) {
  if (!g.ts) throw std::logic_error("ih_discharged: digraph without tree-set");
  const ProofTreeSet& ts = *g.ts;

  Constraint c;
  c.bud = rb.bud();
  c.companion = ts.node(rb.bud()).companion;
  c.scc = rb.scc;
  c.path = rb.nodes;
  c.theta_c = rb.theta_c;

  const ProofNode& h = ts.node(rb.ih_node());
  if (h.rule.tag != RuleTag::Subst)
    throw std::logic_error("ih_discharged: IH-node " + h.id.str() +
                           " is not a substitution step");
  if (!seq_equal(h.rule.subst(ts.node(rb.bud()).sequent), h.sequent))
    throw std::logic_error(
        "ih_discharged: S(H) at node " + h.id.str() +
        " differs from the instantiated bud sequent");

  std::vector<NodeId> trunc(rb.nodes.begin(), rb.nodes.end() - 1);
  c.deriv = pi_derivable(ord, ms, defs, ts, trunc, rb.theta_c, Subst{});
  c.discharged = c.deriv.ok;
  return c;
}

const char* stage_name(Stage s) {
  switch (s) {
    case Stage::Parse: return "parse";
    case Stage::Validate: return "validate";
    case Stage::Normalize: return "normalize";
    case Stage::Digraph: return "digraph";
    case Stage::Discharge: return "discharge";
  }
  return "unknown";
}

std::vector<std::string> validate_tree_set(const InductiveDefSet& defs,
                                           const ProofTreeSet& ts,
                                           CheckMode mode) {
  std::vector<std::string> warnings;
  for (const auto& [id, node] : ts.nodes) {
    if (node.kind == NodeKind::Bud) continue;
    std::vector<Sequent> premises;
    premises.reserve(node.children.size());
    for (const NodeId& c : node.children)
      premises.push_back(ts.node(c).sequent);
    StepCheck sc =
        validate_step(defs, node.sequent, node.rule, premises, node.children, mode);
    for (const std::string& w : sc.warnings)
      warnings.push_back("node " + id.str() + ": " + w);
    if (!sc.ok)
      throw StageError(
          Stage::Validate,
          "node " + id.str() + " (" + rule_name(node.rule.tag) + "): " +
              (sc.errors.empty() ? "invalid step" : sc.errors.front()));
  }
  return warnings;
}

SoundnessReport check_soundness(const ProofFile& pf, unsigned jobs) {
  SoundnessReport rep;

  validate_tree_set(pf.defs, pf.trees, CheckMode::Strict);

  NormalizeResult nres;
  try {
    nres = normalize(pf.trees);
  } catch (const std::invalid_argument& e) {
    throw StageError(Stage::Normalize, e.what());
  }
  rep.normalize_log = std::move(nres.log);
  auto normalized = std::make_shared<ProofTreeSet>(std::move(nres.trees));
  rep.normalized = normalized;

  rep.warnings = validate_tree_set(pf.defs, *normalized, CheckMode::Strict);

  try {
    rep.graph = build_digraph(*normalized, DigraphMode::Analysis);
  } catch (const std::invalid_argument& e) {
    throw StageError(Stage::Digraph, e.what());
  }

  OrderingContext ord = OrderingContext::from_pairs(pf.precedence.less);

  std::vector<RbPath> rbs;
  std::set<size_t> non_singleton;
  for (size_t scc : rep.graph.non_singleton_sccs()) {
    non_singleton.insert(scc);
    for (RbPath& p : rb_paths(rep.graph, scc)) rbs.push_back(std::move(p));
  }
  std::sort(rbs.begin(), rbs.end(),
            [](const RbPath& a, const RbPath& b) { return a.bud() < b.bud(); });

  rep.constraints.resize(rbs.size());
  auto run_one = [&](size_t k) {
    rep.constraints[k] =
        ih_discharged(ord, pf.measures, pf.defs, rep.graph, rbs[k]);
  };
  if (jobs <= 1 || rbs.size() <= 1) {
    for (size_t k = 0; k < rbs.size(); ++k) run_one(k);
  } else {
    std::atomic<size_t> next{0};
    size_t width = std::min<size_t>(jobs, rbs.size());
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(width);
    for (size_t t = 0; t < width; ++t)
      pool.emplace_back([&, t] {
        try {
          for (size_t k; (k = next.fetch_add(1)) < rbs.size();) run_one(k);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    for (std::thread& th : pool) th.join();
    for (std::exception_ptr& e : errors)
      if (e) std::rethrow_exception(e);
  }

  size_t buds_in_ns = 0;
  for (const NodeId& b : normalized->buds())
    if (non_singleton.count(rep.graph.scc_of.at(b))) ++buds_in_ns;
  if (buds_in_ns != rep.constraints.size())
    throw std::logic_error(
        "check_soundness: " + std::to_string(rep.constraints.size()) +
        " constraints for " + std::to_string(buds_in_ns) +
        " buds in non-singleton components");

  rep.discharged_count = 0;
  for (const Constraint& c : rep.constraints)
    if (c.discharged) ++rep.discharged_count;
  rep.sound = rep.discharged_count == rep.constraints.size();
  return rep;
}

}  // namespace cyclo
