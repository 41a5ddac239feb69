#include "cyclo/digraph.hpp"

#include <algorithm>
#include <sstream>

namespace cyclo {

std::vector<size_t> Digraph::non_singleton_sccs() const {
  std::vector<size_t> out;
  for (size_t i = 0; i < sccs.size(); ++i)
    if (sccs[i].size() > 1) out.push_back(i);
  return out;
}

namespace {

// Iterative Tarjan over the arrow adjacency, visiting nodes and successors
// in id order so the component partition is deterministic.
struct Tarjan {
  const std::map<NodeId, std::vector<NodeId>>& adj;
  std::map<NodeId, size_t> index, low;
  std::map<NodeId, bool> on_stack;
  std::vector<NodeId> stack;
  size_t counter = 0;
  std::vector<std::vector<NodeId>> sccs;

  explicit Tarjan(const std::map<NodeId, std::vector<NodeId>>& a) : adj(a) {}

  void run(const NodeId& root) {
    struct Frame {
      NodeId node;
      size_t next_child = 0;
    };
    std::vector<Frame> frames{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      Frame& f = frames.back();
      const auto& succ = adj.at(f.node);
      if (f.next_child < succ.size()) {
        NodeId child = succ[f.next_child++];
        if (!index.count(child)) {
          index[child] = low[child] = counter++;
          stack.push_back(child);
          on_stack[child] = true;
          frames.push_back({child, 0});
        } else if (on_stack[child]) {
          low[f.node] = std::min(low[f.node], index[child]);
        }
      } else {
        if (low[f.node] == index[f.node]) {
          std::vector<NodeId> scc;
          for (;;) {
            NodeId n = stack.back();
            stack.pop_back();
            on_stack[n] = false;
            scc.push_back(n);
            if (n == f.node) break;
          }
          std::sort(scc.begin(), scc.end());
          sccs.push_back(std::move(scc));
        }
        NodeId done = f.node;
        frames.pop_back();
        if (!frames.empty())
          low[frames.back().node] = std::min(low[frames.back().node], low[done]);
      }
    }
  }
};

}  // namespace

Digraph build_digraph(const ProofTreeSet& ts, DigraphMode mode) {
  if (mode == DigraphMode::Analysis) {
    NormalFormReport nf = check_normal_form(ts);
    if (!nf.ok)
      throw std::invalid_argument("tree-set is not in normal form: " +
                                  nf.violations.front());
  }
  Digraph g;
  g.ts = &ts;
  for (const auto& [id, n] : ts.nodes) {
    if (n.kind == NodeKind::Bud) {
      g.arrows.push_back({id, n.companion, ArrowKind::Backlink, std::nullopt});
      continue;
    }
    for (const NodeId& c : n.children) {
      Arrow a{id, c, ArrowKind::Forward, std::nullopt};
      if (n.rule.tag == RuleTag::Gen) {
        Subst s;
        s.bind(n.rule.gen_principal.args[0].head, n.rule.gen_principal.args[1]);
        a.label = std::move(s);
      } else if (n.rule.tag != RuleTag::Subst) {
        a.label = Subst{};  // identity on the free variables of the source
      }
      g.arrows.push_back(std::move(a));
    }
  }

  std::map<NodeId, std::vector<NodeId>> adj;
  for (const auto& [id, n] : ts.nodes) adj[id];
  for (const Arrow& a : g.arrows) adj[a.from].push_back(a.to);
  for (auto& [id, succ] : adj) std::sort(succ.begin(), succ.end());

  Tarjan t(adj);
  for (const auto& [id, succ] : adj)
    if (!t.index.count(id)) t.run(id);
  std::sort(t.sccs.begin(), t.sccs.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  g.sccs = std::move(t.sccs);
  for (size_t i = 0; i < g.sccs.size(); ++i)
    for (const NodeId& id : g.sccs[i]) g.scc_of[id] = i;
  return g;
}

Subst cumulative_subst(const Digraph& g, const std::vector<NodeId>& path) {
  Subst acc;
  // Arrows between consecutive non-bud nodes; the arrow into the bud is the
  // unannotated Subst arrow and contributes nothing.
  for (size_t i = 0; i + 2 < path.size(); ++i) {
    const ProofNode& n = g.ts->node(path[i]);
    if (n.rule.tag == RuleTag::Gen) {
      Subst step;
      step.bind(n.rule.gen_principal.args[0].head, n.rule.gen_principal.args[1]);
      acc = Subst::compose(acc, step);
    }
  }
  return acc;
}

std::vector<RbPath> rb_paths(const Digraph& g, size_t scc_index) {
  const ProofTreeSet& ts = *g.ts;
  std::vector<RbPath> out;
  for (const NodeId& b : g.sccs[scc_index]) {
    const ProofNode& n = ts.node(b);
    if (n.kind != NodeKind::Bud) continue;
    const NodeId& root = ts.tree_of(b).root;
    if (!g.scc_of.count(root) || g.scc_of.at(root) != scc_index) continue;
    RbPath p;
    p.scc = scc_index;
    NodeId cur = b;
    p.nodes.push_back(cur);
    while (cur != root) {
      cur = ts.parent.at(cur);
      p.nodes.push_back(cur);
    }
    std::reverse(p.nodes.begin(), p.nodes.end());
    for (size_t i = 0; i + 1 < p.nodes.size(); ++i) {
      const ProofNode& x = ts.node(p.nodes[i]);
      bool last = i + 2 == p.nodes.size();
      if (x.kind == NodeKind::Bud)
        throw std::logic_error("rb-path passes through bud " + x.id.str());
      if ((x.rule.tag == RuleTag::Subst) != last)
        throw std::logic_error(
            "rb-path to bud " + b.str() +
            " violates the unique-Subst-premise shape at node " + x.id.str());
    }
    p.theta_c = cumulative_subst(g, p.nodes);
    out.push_back(std::move(p));
  }
  return out;
}

CumulativeList cumulative_list(const Digraph& g, const InductiveDefSet& defs,
                               const RbPath& path) {
  const ProofTreeSet& ts = *g.ts;
  size_t n = path.nodes.size() - 1;  // non-bud prefix length

  // Suffix substitutions: theta[i] instantiates S(N^{i+1}); theta[n-1] is
  // the identity and theta[0] is the full cumulative substitution.
  std::vector<Subst> theta(n);
  for (size_t i = n - 1; i-- > 0;) {
    const ProofNode& src = ts.node(path.nodes[i]);
    Subst step;
    if (src.rule.tag == RuleTag::Gen)
      step.bind(src.rule.gen_principal.args[0].head,
                src.rule.gen_principal.args[1]);
    theta[i] = Subst::compose(step, theta[i + 1]);
  }

  CumulativeList out;
  for (size_t i = 0; i < n; ++i)
    out.sequents.push_back(theta[i](ts.node(path.nodes[i]).sequent));
  out.sequents.push_back(ts.node(path.bud()).sequent);

  for (size_t i = 0; i < n; ++i) {
    const ProofNode& node = ts.node(path.nodes[i]);
    const Subst& th = theta[i];
    const Subst& th_next = i + 1 < n ? theta[i + 1] : theta[n - 1];

    std::vector<Sequent> premises;
    std::vector<NodeId> children = node.children;
    for (const NodeId& c : children) premises.push_back(th_next(ts.node(c).sequent));

    StepEvidence ev;
    ev.node = node.id;
    RuleApp app = node.rule;
    // Instantiate the rule's own formula data.
    app.gen_principal = th(app.gen_principal);
    app.case_principal = th(app.case_principal);
    app.unfold_principal = th(app.unfold_principal);
    app.cut_formula = th(app.cut_formula);
    for (Formula& f : app.wk_dropped) f = th(f);

    if (app.tag == RuleTag::Gen &&
        app.gen_principal.args[0] == app.gen_principal.args[1]) {
      // The instantiated principal is u = u; the step weakens it away.
      RuleApp wk;
      wk.tag = RuleTag::Wk;
      wk.wk_dropped = {Formula::atomic(app.gen_principal)};
      ev.replaced_by_wk = true;
      ev.rule = "Wk";
      ev.check = validate_step(defs, out.sequents[i], wk, premises, children,
                               CheckMode::Evidence);
    } else {
      ev.rule = rule_name(app.tag);
      ev.check = validate_step(defs, out.sequents[i], app, premises, children,
                               CheckMode::Evidence);
    }
    if (!ev.check.ok) out.ok = false;
    out.steps.push_back(std::move(ev));
  }
  return out;
}

std::string to_dot(const Digraph& g) {
  const ProofTreeSet& ts = *g.ts;
  std::ostringstream out;
  out << "digraph proof {\n  node [shape=box];\n";
  for (const auto& [id, n] : ts.nodes)
    out << "  \"" << id.str() << "\" [label=\"" << id.str() << ": "
        << n.sequent.str() << "\"];\n";
  std::vector<const Arrow*> forward, back;
  for (const Arrow& a : g.arrows)
    (a.kind == ArrowKind::Forward ? forward : back).push_back(&a);
  auto by_ids = [](const Arrow* a, const Arrow* b) {
    return std::tie(a->from, a->to) < std::tie(b->from, b->to);
  };
  std::sort(forward.begin(), forward.end(), by_ids);
  std::sort(back.begin(), back.end(), by_ids);
  for (const Arrow* a : forward) {
    out << "  \"" << a->from.str() << "\" -> \"" << a->to.str() << "\"";
    if (a->label) out << " [label=\"" << a->label->str() << "\"]";
    out << ";\n";
  }
  for (const Arrow* a : back)
    out << "  \"" << a->from.str() << "\" -> \"" << a->to.str()
        << "\" [style=dashed];\n";
  out << "}\n";
  return out.str();
}

}  // namespace cyclo
