#include "cyclo/cycles.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace cyclo {

Skeleton build_skeleton(const ProofTreeSet& ts) {
  Skeleton sk;
  for (const NodeId& bud : ts.buds()) {
    SkeletonPath p;
    p.bud = bud;
    std::vector<NodeId> up{bud};
    NodeId cur = bud;
    while (ts.parent.count(cur)) {
      cur = ts.parent.at(cur);
      up.push_back(cur);
    }
    p.root = cur;
    p.nodes.assign(up.rbegin(), up.rend());
    sk.paths.push_back(std::move(p));
  }
  sk.adj.resize(sk.paths.size());
  for (size_t i = 0; i < sk.paths.size(); ++i) {
    const NodeId& comp = ts.node(sk.paths[i].bud).companion;
    for (size_t j = 0; j < sk.paths.size(); ++j)
      if (sk.paths[j].root == comp) sk.adj[i].push_back(j);
  }
  return sk;
}

namespace {

// Enumerates every simple cycle exactly once: a cycle is discovered from its
// smallest vertex s by walking only vertices larger than s.
struct CycleSearch {
  const std::vector<std::vector<size_t>>& adj;
  std::vector<std::vector<size_t>>& out;
  std::vector<size_t> path;
  std::vector<char> onpath;
  size_t s = 0;

  void dfs(size_t v) {
    path.push_back(v);
    onpath[v] = 1;
    for (size_t w : adj[v]) {
      if (w == s)
        out.push_back(path);
      else if (w > s && !onpath[w])
        dfs(w);
    }
    onpath[v] = 0;
    path.pop_back();
  }
};

}  // namespace

std::vector<std::vector<size_t>> simple_cycles(
    const std::vector<std::vector<size_t>>& adj) {
  for (size_t v = 0; v < adj.size(); ++v)
    for (size_t w : adj[v])
      if (w >= adj.size())
        throw std::invalid_argument("simple_cycles: edge target out of range");

  std::vector<std::vector<size_t>> out;
  CycleSearch cs{adj, out, {}, std::vector<char>(adj.size(), 0), 0};
  for (size_t s = 0; s < adj.size(); ++s) {
    cs.s = s;
    cs.dfs(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<NCycle> enumerate_ncycles(const Digraph& g) {
  if (!g.ts) throw std::logic_error("enumerate_ncycles: digraph without tree-set");
  Skeleton sk = build_skeleton(*g.ts);
  std::vector<NCycle> out;
  for (std::vector<size_t>& c : simple_cycles(sk.adj)) {
    std::set<NodeId> roots;
    bool repeated = false;
    for (size_t i : c)
      if (!roots.insert(sk.paths[i].root).second) repeated = true;
    if (!repeated) out.push_back(NCycle{std::move(c)});
  }
  return out;
}

std::uint64_t complete_digraph_cycle_count(unsigned n) {
  if (n < 2)
    throw std::invalid_argument("complete_digraph_cycle_count: need n >= 2");
  std::uint64_t total = 0;
  for (unsigned k = 2; k <= n; ++k) {
    std::uint64_t falling = 1;  // n (n-1) ... (n-k+1)
    for (unsigned i = 0; i < k; ++i)
      if (__builtin_mul_overflow(falling, static_cast<std::uint64_t>(n - i),
                                 &falling))
        throw std::overflow_error(
            "complete_digraph_cycle_count: 64-bit overflow at n = " +
            std::to_string(n));
    if (falling % k != 0)
      throw std::logic_error(
          "complete_digraph_cycle_count: falling factorial not divisible by "
          "the cycle length");
    if (__builtin_add_overflow(total, falling / k, &total))
      throw std::overflow_error(
          "complete_digraph_cycle_count: 64-bit overflow at n = " +
          std::to_string(n));
  }
  return total;
}

PriorCriterionReport check_prior_criterion(const OrderingContext& ord,
                                           const MeasureSpec& ms,
                                           const InductiveDefSet& defs,
                                           const Digraph& g) {
  if (!g.ts)
    throw std::logic_error("check_prior_criterion: digraph without tree-set");
  const ProofTreeSet& ts = *g.ts;

  PriorCriterionReport rep;
  rep.skeleton = build_skeleton(ts);
  std::vector<NCycle> cycles = enumerate_ncycles(g);

  std::map<size_t, std::pair<bool, std::string>> checked;
  auto check_path = [&](size_t idx) {
    auto it = checked.find(idx);
    if (it != checked.end()) return it->second;
    const SkeletonPath& sp = rep.skeleton.paths[idx];
    if (sp.nodes.size() < 2)
      throw std::logic_error("check_prior_criterion: bud " + sp.bud.str() +
                             " is a tree root");
    Subst theta = cumulative_subst(g, sp.nodes);
    std::vector<NodeId> trunc(sp.nodes.begin(), sp.nodes.end() - 1);
    Derivability d = pi_derivable(ord, ms, defs, ts, trunc, theta, Subst{});
    auto res = std::make_pair(d.ok, d.failure);
    checked.emplace(idx, res);
    return res;
  };

  for (NCycle& c : cycles) {
    CycleEntry entry;
    entry.cycle = c;
    for (size_t idx : c.paths) {
      auto [ok, failure] = check_path(idx);
      entry.constraints.push_back(
          {idx, rep.skeleton.paths[idx].bud, ok, failure});
      entry.discharged = entry.discharged && ok;
    }
    rep.sound = rep.sound && entry.discharged;
    rep.cycles.push_back(std::move(entry));
  }
  return rep;
}

Redundancy redundancy_report(const Digraph& g) {
  Redundancy r;
  for (size_t scc : g.non_singleton_sccs())
    r.distinct += rb_paths(g, scc).size();
  for (const NCycle& c : enumerate_ncycles(g)) r.total += c.paths.size();
  return r;
}

}  // namespace cyclo
