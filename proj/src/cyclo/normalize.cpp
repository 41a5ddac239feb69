#include "cyclo/normalize.hpp"

#include <algorithm>
#include <stdexcept>

namespace cyclo {

std::string AuditEntry::str() const {
  std::string out;
  switch (op) {
    case 1:
      out = "op1: Subst premise " + target.str() + " detached into new tree rooted " +
            created[0].str();
      break;
    case 2:
      out = "op2: companion " + target.str() + " detached into new tree rooted " +
            created[0].str() + "; original became Subst({}) over new bud " +
            created[1].str();
      break;
    case 3:
      out = "op3: bud " + target.str() + " padded with Subst({}); new bud " +
            created[0].str();
      break;
  }
  return out;
}

namespace {

bool is_subst_node(const ProofNode& n) {
  return n.kind == NodeKind::Inner && n.rule.tag == RuleTag::Subst;
}

NodeId fresh_suffix(const ProofTreeSet& ts, const NodeId& base) {
  for (uint64_t k = 1;; ++k) {
    NodeId id = base.child_id(k);
    if (!ts.has(id)) return id;
  }
}

std::string fresh_tree_name(const ProofTreeSet& ts, const NodeId& root) {
  std::string name = "detached-" + root.str();
  auto taken = [&](const std::string& n) {
    for (const Tree& t : ts.trees)
      if (t.name == n) return true;
    return false;
  };
  while (taken(name)) name += '\'';
  return name;
}

// All nodes strictly below `id`, in the declaration order of `tree`.
std::vector<NodeId> subtree_below(const ProofTreeSet& ts, const Tree& tree,
                                  const NodeId& id) {
  std::set<NodeId> reached;
  std::vector<NodeId> stack(ts.node(id).children.begin(),
                            ts.node(id).children.end());
  while (!stack.empty()) {
    NodeId n = stack.back();
    stack.pop_back();
    reached.insert(n);
    for (const NodeId& c : ts.node(n).children) stack.push_back(c);
  }
  std::vector<NodeId> out;
  for (const NodeId& n : tree.order)
    if (reached.count(n)) out.push_back(n);
  return out;
}

void remap_companions(ProofTreeSet& ts, const NodeId& from, const NodeId& to) {
  for (auto& [id, n] : ts.nodes)
    if (n.kind == NodeKind::Bud && n.companion == from) n.companion = to;
}

void erase_from_order(Tree& tree, const std::vector<NodeId>& gone) {
  std::set<NodeId> g(gone.begin(), gone.end());
  tree.order.erase(std::remove_if(tree.order.begin(), tree.order.end(),
                                  [&](const NodeId& id) { return g.count(id); }),
                   tree.order.end());
}

void insert_after_in_order(Tree& tree, const NodeId& anchor, const NodeId& id) {
  auto it = std::find(tree.order.begin(), tree.order.end(), anchor);
  tree.order.insert(it == tree.order.end() ? tree.order.end() : it + 1, id);
}

// Detaches the subtree rooted at `id` into a new tree rooted by a duplicate
// node carrying `id`'s rule and children. Returns the duplicate's id. The
// original node is left without children; the caller rewrites it.
NodeId detach_subtree(ProofTreeSet& ts, const NodeId& id) {
  Tree& home = ts.trees[ts.tree_index.at(id)];
  std::vector<NodeId> moved = subtree_below(ts, home, id);

  NodeId dup = fresh_suffix(ts, id);
  ProofNode& orig = ts.node(id);
  ProofNode dup_node;
  dup_node.id = dup;
  dup_node.sequent = orig.sequent;
  dup_node.kind = NodeKind::Inner;
  dup_node.rule = orig.rule;
  dup_node.children = orig.children;
  dup_node.tag = orig.tag;
  orig.children.clear();
  orig.tag.clear();

  Tree fresh;
  fresh.name = fresh_tree_name(ts, dup);
  fresh.root = dup;
  fresh.order.push_back(dup);
  for (const NodeId& n : moved) fresh.order.push_back(n);
  erase_from_order(home, moved);

  ts.nodes.emplace(dup, std::move(dup_node));
  ts.trees.push_back(std::move(fresh));
  return dup;
}

}  // namespace

bool op1_applicable(const ProofTreeSet& ts, const NodeId& id) {
  if (!ts.has(id) || ts.node(id).kind == NodeKind::Bud) return false;
  auto p = ts.parent.find(id);
  return p != ts.parent.end() && is_subst_node(ts.node(p->second));
}

bool op2_applicable(const ProofTreeSet& ts, const NodeId& id) {
  if (!ts.has(id) || ts.node(id).kind == NodeKind::Bud) return false;
  if (!ts.companions().count(id)) return false;
  return ts.tree_of(id).root != id;
}

bool op3_applicable(const ProofTreeSet& ts, const NodeId& id) {
  if (!ts.has(id) || ts.node(id).kind != NodeKind::Bud) return false;
  auto p = ts.parent.find(id);
  return p != ts.parent.end() && !is_subst_node(ts.node(p->second));
}

ProofTreeSet op1_detach_subst_premise(const ProofTreeSet& input, const NodeId& id,
                                      AuditEntry* audit) {
  if (!op1_applicable(input, id))
    throw std::invalid_argument("node " + id.str() +
                                " is not a detachable Subst premise");
  ProofTreeSet ts = input;
  NodeId dup = detach_subtree(ts, id);
  ProofNode& orig = ts.node(id);
  orig.kind = NodeKind::Bud;
  orig.rule = RuleApp{};
  orig.companion = dup;
  remap_companions(ts, id, dup);
  ts.rebuild_indices();
  if (audit) *audit = AuditEntry{1, id, {dup}};
  return ts;
}

ProofTreeSet op2_detach_companion(const ProofTreeSet& input, const NodeId& id,
                                  AuditEntry* audit) {
  if (!op2_applicable(input, id))
    throw std::invalid_argument("node " + id.str() +
                                " is not a non-root companion");
  ProofTreeSet ts = input;
  NodeId dup = detach_subtree(ts, id);
  NodeId bud = fresh_suffix(ts, id);

  ProofNode& orig = ts.node(id);
  orig.kind = NodeKind::Inner;
  orig.rule = RuleApp{};
  orig.rule.tag = RuleTag::Subst;
  orig.children = {bud};

  ProofNode bud_node;
  bud_node.id = bud;
  bud_node.sequent = orig.sequent;
  bud_node.kind = NodeKind::Bud;
  bud_node.companion = dup;
  Tree& home = ts.trees[ts.tree_index.at(id)];
  insert_after_in_order(home, id, bud);
  ts.nodes.emplace(bud, std::move(bud_node));

  remap_companions(ts, id, dup);
  ts.rebuild_indices();
  if (audit) *audit = AuditEntry{2, id, {dup, bud}};
  return ts;
}

ProofTreeSet op3_pad_bud(const ProofTreeSet& input, const NodeId& id,
                         AuditEntry* audit) {
  if (!op3_applicable(input, id))
    throw std::invalid_argument("node " + id.str() +
                                " is not a bud under a non-Subst rule");
  ProofTreeSet ts = input;
  NodeId bud = fresh_suffix(ts, id);

  ProofNode& orig = ts.node(id);
  ProofNode bud_node;
  bud_node.id = bud;
  bud_node.sequent = orig.sequent;
  bud_node.kind = NodeKind::Bud;
  bud_node.companion = orig.companion;
  bud_node.tag = orig.tag;

  orig.kind = NodeKind::Inner;
  orig.rule = RuleApp{};
  orig.rule.tag = RuleTag::Subst;
  orig.children = {bud};
  orig.companion = NodeId{};
  orig.tag.clear();

  Tree& home = ts.trees[ts.tree_index.at(id)];
  insert_after_in_order(home, id, bud);
  ts.nodes.emplace(bud, std::move(bud_node));
  ts.rebuild_indices();
  if (audit) *audit = AuditEntry{3, id, {bud}};
  return ts;
}

NormalizeResult normalize(const ProofTreeSet& input) {
  NormalizeResult res;
  res.trees = input;
  res.trees.rebuild_indices();

  size_t budget = 3 * res.trees.nodes.size() + 3;
  auto first_target = [&](bool (*applicable)(const ProofTreeSet&, const NodeId&))
      -> std::optional<NodeId> {
    for (const auto& [id, node] : res.trees.nodes)
      if (applicable(res.trees, id)) return id;
    return std::nullopt;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    auto drain = [&](int op) {
      auto pred = op == 1   ? op1_applicable
                  : op == 2 ? op2_applicable
                            : op3_applicable;
      while (auto id = first_target(pred)) {
        if (res.log.size() >= budget)
          throw std::logic_error("normalization exceeded its operation budget");
        AuditEntry e;
        res.trees = op == 1   ? op1_detach_subst_premise(res.trees, *id, &e)
                    : op == 2 ? op2_detach_companion(res.trees, *id, &e)
                              : op3_pad_bud(res.trees, *id, &e);
        res.log.push_back(std::move(e));
        changed = true;
      }
    };
    drain(2);
    drain(1);
    drain(3);
  }
  return res;
}

NormalFormReport check_normal_form(const ProofTreeSet& ts) {
  NormalFormReport rep;
  auto flag = [&](std::string msg) {
    rep.ok = false;
    rep.violations.push_back(std::move(msg));
  };
  std::set<NodeId> comps = ts.companions();
  for (const auto& [id, n] : ts.nodes) {
    if (n.kind == NodeKind::Bud) {
      auto p = ts.parent.find(id);
      if (p == ts.parent.end())
        flag("bud " + id.str() + " is a tree root");
      else if (!is_subst_node(ts.node(p->second)))
        flag("bud " + id.str() + "'s parent " + p->second.str() +
             " applies " + rule_name(ts.node(p->second).rule.tag) +
             ", not Subst");
    } else if (n.rule.tag == RuleTag::Subst) {
      for (const NodeId& c : n.children)
        if (ts.node(c).kind != NodeKind::Bud)
          flag("Subst node " + id.str() + "'s premise " + c.str() +
               " is not a bud");
    }
    if (comps.count(id) && ts.tree_of(id).root != id)
      flag("companion " + id.str() + " is not a tree root");
  }
  // Root-to-bud paths may contain no Subst premise other than the bud.
  for (const NodeId& b : ts.buds()) {
    NodeId cur = b;
    while (ts.parent.count(cur)) {
      NodeId par = ts.parent.at(cur);
      if (is_subst_node(ts.node(par)) && cur != b)
        flag("path to bud " + b.str() + " passes Subst premise " + cur.str());
      cur = par;
    }
  }
  return rep;
}

}  // namespace cyclo
