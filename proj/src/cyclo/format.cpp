#include "cyclo/format.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>

#include "cyclo/ordering.hpp"

namespace cyclo {

// ----------------------------------------------------------- s-expressions

std::string Sexp::str() const {
  if (leaf) return token;
  std::string out = "(";
  for (size_t i = 0; i < items.size(); ++i) {
    if (i) out += ' ';
    out += items[i].str();
  }
  out += ')';
  return out;
}

namespace {

struct Reader {
  const std::string& text;
  size_t pos = 0;
  size_t line = 1, col = 1;

  explicit Reader(const std::string& t) : text(t) {}

  [[noreturn]] void err(const std::string& msg) const {
    throw ParseError(line, col, msg);
  }

  int peek() const { return pos < text.size() ? (unsigned char)text[pos] : -1; }

  void advance() {
    if (pos >= text.size()) return;
    if (text[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }

  void skip_blank() {
    for (;;) {
      int c = peek();
      if (c == ';') {
        while (peek() != -1 && peek() != '\n') advance();
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else {
        return;
      }
    }
  }

  static bool token_char(int c) {
    return c != -1 && c != '(' && c != ')' && c != ';' && c != ' ' &&
           c != '\t' && c != '\r' && c != '\n';
  }

  Sexp read_form() {
    skip_blank();
    Sexp s;
    s.line = line;
    s.col = col;
    int c = peek();
    if (c == -1) err("unexpected end of input");
    if (c == ')') err("unmatched ')'");
    if (c == '(') {
      advance();
      s.leaf = false;
      for (;;) {
        skip_blank();
        int d = peek();
        if (d == -1) throw ParseError(s.line, s.col, "unclosed '('");
        if (d == ')') {
          advance();
          return s;
        }
        s.items.push_back(read_form());
      }
    }
    s.leaf = true;
    while (token_char(peek())) {
      s.token += (char)peek();
      advance();
    }
    return s;
  }
};

}  // namespace

std::vector<Sexp> parse_sexps(const std::string& text) {
  Reader r(text);
  std::vector<Sexp> out;
  for (;;) {
    r.skip_blank();
    if (r.peek() == -1) return out;
    out.push_back(r.read_form());
  }
}

// ------------------------------------------------------------------ parsing

namespace {

[[noreturn]] void err(const Sexp& at, const std::string& msg) {
  throw ParseError(at.line, at.col, msg);
}

const std::string& leaf_token(const Sexp& s, const char* what) {
  if (!s.leaf) err(s, std::string("expected ") + what + ", got " + s.str());
  return s.token;
}

size_t parse_nat(const Sexp& s, const char* what) {
  const std::string& t = leaf_token(s, what);
  if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos)
    err(s, std::string("expected ") + what + ", got '" + t + "'");
  return std::stoull(t);
}

NodeId parse_id(const Sexp& s) {
  auto id = NodeId::parse(leaf_token(s, "a node id"));
  if (!id) err(s, "malformed node id '" + s.token + "'");
  return *id;
}

Term parse_term(const Sexp& s, const Signature& sig) {
  if (s.leaf) {
    if (s.token.empty()) err(s, "empty term");
    const Symbol* sym = sig.find(s.token);
    if (!sym) return Term::mkvar(s.token);
    if (sym->kind != SymbolKind::Function)
      err(s, "predicate '" + s.token + "' used as a term");
    if (sym->arity != 0)
      err(s, "function '" + s.token + "' expects " +
                 std::to_string(sym->arity) + " argument(s)");
    return Term::app(s.token);
  }
  if (s.items.empty()) err(s, "empty term");
  const std::string& head = leaf_token(s.items[0], "a function symbol");
  const Symbol* sym = sig.find(head);
  if (!sym || sym->kind != SymbolKind::Function)
    err(s.items[0], "unknown function symbol '" + head + "'");
  if (sym->arity != s.items.size() - 1)
    err(s, "function '" + head + "' expects " + std::to_string(sym->arity) +
               " argument(s), got " + std::to_string(s.items.size() - 1));
  std::vector<Term> args;
  for (size_t i = 1; i < s.items.size(); ++i)
    args.push_back(parse_term(s.items[i], sig));
  return Term::app(head, std::move(args));
}

Atom parse_atom(const Sexp& s, const Signature& sig) {
  const Sexp* headx = nullptr;
  size_t nargs = 0;
  if (s.leaf) {
    headx = &s;
  } else {
    if (s.items.empty()) err(s, "empty atom");
    headx = &s.items[0];
    nargs = s.items.size() - 1;
  }
  const std::string& head = leaf_token(*headx, "a predicate symbol");
  if (head == "=") {
    if (nargs != 2) err(s, "equality takes exactly two terms");
    return Atom::equality(parse_term(s.items[1], sig),
                          parse_term(s.items[2], sig));
  }
  const Symbol* sym = sig.find(head);
  if (!sym || sym->kind == SymbolKind::Function)
    err(*headx, "unknown predicate '" + head + "'");
  if (sym->arity != nargs)
    err(s, "predicate '" + head + "' expects " + std::to_string(sym->arity) +
               " argument(s), got " + std::to_string(nargs));
  std::vector<Term> args;
  for (size_t i = 1; i <= nargs; ++i) args.push_back(parse_term(s.items[i], sig));
  return Atom::make(head, std::move(args));
}

Formula parse_formula(const Sexp& s, const Signature& sig);

std::vector<std::string> parse_var_list(const Sexp& s) {
  if (s.leaf) err(s, "expected a parenthesized variable list");
  std::vector<std::string> out;
  for (const Sexp& v : s.items) out.push_back(leaf_token(v, "a variable"));
  return out;
}

Formula parse_formula(const Sexp& s, const Signature& sig) {
  auto connective = [&](Formula::Kind kind, size_t min_args,
                        size_t max_args) {
    size_t n = s.items.size() - 1;
    if (n < min_args || n > max_args)
      err(s, "connective '" + s.items[0].token + "' used with " +
                 std::to_string(n) + " operand(s)");
    Formula f;
    f.kind = kind;
    for (size_t i = 1; i < s.items.size(); ++i)
      f.sub.push_back(parse_formula(s.items[i], sig));
    return f;
  };
  if (!s.leaf && !s.items.empty() && s.items[0].leaf) {
    const std::string& head = s.items[0].token;
    size_t many = std::numeric_limits<size_t>::max();
    if (head == "and") return connective(Formula::Kind::And, 2, many);
    if (head == "or") return connective(Formula::Kind::Or, 2, many);
    if (head == "=>") return connective(Formula::Kind::Implies, 2, 2);
    if (head == "not") return connective(Formula::Kind::Not, 1, 1);
    if (head == "forall" || head == "exists") {
      if (s.items.size() != 3)
        err(s, "'" + head + "' takes a variable list and a body");
      Formula f;
      f.kind = head == "forall" ? Formula::Kind::Forall : Formula::Kind::Exists;
      f.binders = parse_var_list(s.items[1]);
      if (f.binders.empty()) err(s.items[1], "'" + head + "' binds no variables");
      f.sub.push_back(parse_formula(s.items[2], sig));
      return f;
    }
  }
  return Formula::atomic(parse_atom(s, sig));
}

std::vector<Formula> parse_formula_list(const Sexp& s, const Signature& sig) {
  if (s.leaf) err(s, "expected a parenthesized formula list");
  std::vector<Formula> out;
  for (const Sexp& f : s.items) out.push_back(parse_formula(f, sig));
  return out;
}

Sequent parse_sequent(const Sexp& s, const Signature& sig) {
  if (!s.is("seq") || s.items.size() != 3)
    err(s, "expected (seq (<antecedents>) (<succedents>))");
  Sequent out;
  out.ante = parse_formula_list(s.items[1], sig);
  out.succ = parse_formula_list(s.items[2], sig);
  return out;
}

RuleApp parse_rule(const Sexp& s, const Signature& sig) {
  if (!s.is("rule") || s.items.size() < 2)
    err(s, "expected (rule <Name> ...)");
  const std::string& name = leaf_token(s.items[1], "a rule name");
  RuleApp app;
  auto want = [&](size_t n) {
    if (s.items.size() != n)
      err(s, "rule " + name + " takes " + std::to_string(n - 2) + " clause(s)");
  };
  if (name == "Subst") {
    want(3);
    const Sexp& bs = s.items[2];
    if (bs.leaf) err(bs, "expected a binding list ((x <term>) ...)");
    app.tag = RuleTag::Subst;
    for (const Sexp& b : bs.items) {
      if (b.leaf || b.items.size() != 2)
        err(b, "expected a binding (x <term>)");
      const std::string& v = leaf_token(b.items[0], "a variable");
      if (sig.find(v)) err(b.items[0], "'" + v + "' is a declared symbol, not a variable");
      if (app.subst.lookup(v)) err(b, "variable '" + v + "' bound twice");
      app.subst.bind(v, parse_term(b.items[1], sig));
    }
  } else if (name == "Gen") {
    want(3);
    app.tag = RuleTag::Gen;
    app.gen_principal = parse_atom(s.items[2], sig);
    if (!app.gen_principal.is_equality())
      err(s.items[2], "Gen principal must be an equality");
  } else if (name == "Case") {
    want(4);
    app.tag = RuleTag::Case;
    app.case_principal = parse_atom(s.items[2], sig);
    const Sexp& br = s.items[3];
    if (!br.is("branches")) err(br, "expected (branches (<axiom> <child>) ...)");
    for (size_t i = 1; i < br.items.size(); ++i) {
      const Sexp& b = br.items[i];
      if (b.leaf || b.items.size() != 2)
        err(b, "expected a branch (<axiom> <child>)");
      app.branches.emplace_back(leaf_token(b.items[0], "an axiom name"),
                                parse_id(b.items[1]));
    }
  } else if (name == "Unfold") {
    want(4);
    app.tag = RuleTag::Unfold;
    app.unfold_axiom = leaf_token(s.items[2], "an axiom name");
    app.unfold_principal = parse_atom(s.items[3], sig);
  } else if (name == "Ax") {
    want(2);
    app.tag = RuleTag::Ax;
  } else if (name == "Wk") {
    app.tag = RuleTag::Wk;
    for (size_t i = 2; i < s.items.size(); ++i)
      app.wk_dropped.push_back(parse_formula(s.items[i], sig));
    if (app.wk_dropped.empty()) err(s, "Wk drops at least one formula");
  } else if (name == "Cut") {
    want(3);
    app.tag = RuleTag::Cut;
    app.cut_formula = parse_formula(s.items[2], sig);
  } else if (name == "AllR" || name == "ExL") {
    want(3);
    app.tag = name == "AllR" ? RuleTag::AllR : RuleTag::ExL;
    app.fresh_vars = parse_var_list(s.items[2]);
    if (app.fresh_vars.empty()) err(s.items[2], name + " introduces no variables");
  } else if (name == "Generic") {
    want(4);
    app.tag = RuleTag::Generic;
    app.generic_name = leaf_token(s.items[2], "a rule name");
    const std::string& tp = leaf_token(s.items[3], "true or false");
    if (tp != "true" && tp != "false")
      err(s.items[3], "trace-preserving flag must be true or false");
    app.trace_preserving = tp == "true";
  } else {
    err(s.items[1], "unknown rule '" + name + "'");
  }
  return app;
}

}  // namespace

// ------------------------------------------------------- tree-set integrity

const ProofNode& ProofTreeSet::node(const NodeId& id) const {
  auto it = nodes.find(id);
  if (it == nodes.end())
    throw std::out_of_range("no node with id " + id.str());
  return it->second;
}

ProofNode& ProofTreeSet::node(const NodeId& id) {
  auto it = nodes.find(id);
  if (it == nodes.end())
    throw std::out_of_range("no node with id " + id.str());
  return it->second;
}

std::vector<NodeId> ProofTreeSet::buds() const {
  std::vector<NodeId> out;
  for (const auto& [id, n] : nodes)
    if (n.kind == NodeKind::Bud) out.push_back(id);
  return out;
}

std::set<NodeId> ProofTreeSet::companions() const {
  std::set<NodeId> out;
  for (const auto& [id, n] : nodes)
    if (n.kind == NodeKind::Bud) out.insert(n.companion);
  return out;
}

const Tree& ProofTreeSet::tree_of(const NodeId& id) const {
  auto it = tree_index.find(id);
  if (it == tree_index.end())
    throw std::out_of_range("node " + id.str() + " belongs to no tree");
  return trees[it->second];
}

void ProofTreeSet::rebuild_indices() {
  parent.clear();
  tree_index.clear();
  std::set<NodeId> visited;
  for (size_t ti = 0; ti < trees.size(); ++ti) {
    Tree& tree = trees[ti];
    if (!has(tree.root))
      throw std::runtime_error("tree '" + tree.name + "' has unknown root " +
                               tree.root.str());
    std::vector<NodeId> stack{tree.root};
    std::set<NodeId> reached;
    while (!stack.empty()) {
      NodeId id = stack.back();
      stack.pop_back();
      if (!visited.insert(id).second)
        throw std::runtime_error("node " + id.str() +
                                 " is reachable from two directions");
      reached.insert(id);
      tree_index[id] = ti;
      const ProofNode& n = node(id);
      if (n.kind == NodeKind::Bud && !n.children.empty())
        throw std::runtime_error("bud " + id.str() + " has children");
      for (const NodeId& c : n.children) {
        if (!has(c))
          throw std::runtime_error("node " + id.str() +
                                   " references unknown child " + c.str());
        parent[c] = id;
        stack.push_back(c);
      }
    }
    std::set<NodeId> declared(tree.order.begin(), tree.order.end());
    if (tree.order.empty()) {
      // Programmatically built tree: adopt a canonical order.
      for (const auto& [id, ignored] : nodes)
        if (reached.count(id)) tree.order.push_back(id);
    } else if (declared != reached) {
      for (const NodeId& id : declared)
        if (!reached.count(id))
          throw std::runtime_error("node " + id.str() + " of tree '" +
                                   tree.name +
                                   "' is not reachable from its root");
      for (const NodeId& id : reached)
        if (!declared.count(id))
          throw std::runtime_error("node " + id.str() +
                                   " is reachable in tree '" + tree.name +
                                   "' but not declared in it");
    }
  }
  for (const auto& [id, n] : nodes) {
    if (!visited.count(id))
      throw std::runtime_error("node " + id.str() + " belongs to no tree");
    if (n.kind != NodeKind::Bud) continue;
    if (!has(n.companion))
      throw std::runtime_error("bud " + id.str() + " names unknown companion " +
                               n.companion.str());
    const ProofNode& comp = node(n.companion);
    if (comp.kind == NodeKind::Bud)
      throw std::runtime_error("bud " + id.str() + " has a bud as companion");
    if (!seq_equal(n.sequent, comp.sequent))
      throw std::runtime_error("bud " + id.str() + " and companion " +
                               n.companion.str() +
                               " carry different sequents");
  }
}

// --------------------------------------------------------- measure matching

namespace {

bool formula_pattern_matches(const Formula& pattern, const Formula& subject,
                             const std::set<std::string>& bindable,
                             std::map<std::string, Term>& binding) {
  if (pattern.is_atom())
    return subject.is_atom() &&
           match_restricted(pattern.atom, subject.atom, bindable, binding);
  // Non-atomic patterns are matched rigidly under the current binding.
  return Subst(binding)(pattern) == subject;
}

struct SeqMatch {
  const Sequent& pattern;
  const Sequent& subject;
  std::set<std::string> bindable;
  std::map<std::string, Term> binding;
  std::vector<size_t> ante_map;  // pattern ante position -> subject position

  SeqMatch(const Sequent& p, const Sequent& s)
      : pattern(p), subject(s), bindable(free_vars(p)) {}

  bool match_side(size_t i, const std::vector<Formula>& ps,
                  const std::vector<Formula>& ss, std::vector<bool>& used,
                  bool record, const std::function<bool()>& next) {
    if (i == ps.size()) return next();
    for (size_t k = 0; k < ss.size(); ++k) {
      if (used[k]) continue;
      auto saved = binding;
      if (formula_pattern_matches(ps[i], ss[k], bindable, binding)) {
        used[k] = true;
        if (record) ante_map.push_back(k);
        if (match_side(i + 1, ps, ss, used, record, next)) return true;
        if (record) ante_map.pop_back();
        used[k] = false;
      }
      binding = std::move(saved);
    }
    return false;
  }

  bool run() {
    if (pattern.ante.size() != subject.ante.size() ||
        pattern.succ.size() != subject.succ.size())
      return false;
    std::vector<bool> used_a(subject.ante.size(), false);
    std::vector<bool> used_s(subject.succ.size(), false);
    return match_side(0, pattern.ante, subject.ante, used_a, true, [&] {
      return match_side(0, pattern.succ, subject.succ, used_s, false,
                        [] { return true; });
    });
  }
};

}  // namespace

std::optional<std::vector<size_t>> match_sequent_pattern(const Sequent& pattern,
                                                         const Sequent& subject) {
  SeqMatch m(pattern, subject);
  if (!m.run()) return std::nullopt;
  return m.ante_map;
}

std::vector<size_t> MeasureSpec::select(const Sequent& subject,
                                        const Signature& sig) const {
  for (const MeasureRule& rule : rules) {
    auto mapping = match_sequent_pattern(rule.pattern, subject);
    if (!mapping) continue;
    auto pattern_iaas = iaa_occurrences(rule.pattern, sig);
    std::vector<size_t> out;
    for (size_t k : rule.indices) out.push_back((*mapping)[pattern_iaas[k].first]);
    std::sort(out.begin(), out.end());
    return out;
  }
  std::vector<size_t> out;
  for (const auto& [pos, atom] : iaa_occurrences(subject, sig)) out.push_back(pos);
  return out;
}

// ----------------------------------------------------------- file assembly

namespace {

void parse_signature(const Sexp& s, Signature& sig) {
  for (size_t i = 1; i < s.items.size(); ++i) {
    const Sexp& d = s.items[i];
    if (d.leaf || d.items.size() != 3)
      err(d, "expected (fun|ind|ord <name> <arity>)");
    const std::string& kind = leaf_token(d.items[0], "fun, ind or ord");
    SymbolKind k;
    if (kind == "fun")
      k = SymbolKind::Function;
    else if (kind == "ind")
      k = SymbolKind::InductivePred;
    else if (kind == "ord")
      k = SymbolKind::OrdinaryPred;
    else
      err(d.items[0], "expected fun, ind or ord, got '" + kind + "'");
    const std::string& name = leaf_token(d.items[1], "a symbol name");
    size_t arity = parse_nat(d.items[2], "an arity");
    try {
      sig.declare(name, k, (unsigned)arity);
    } catch (const SignatureError& e) {
      err(d, e.what());
    }
  }
}

void parse_axiom(const Sexp& s, InductiveDefSet& defs) {
  if (s.items.size() != 5)
    err(s, "expected (axiom <name> (<ordinary>) (<inductive>) <head>)");
  AxiomDef ax;
  ax.name = leaf_token(s.items[1], "an axiom name");
  if (defs.axiom(ax.name)) err(s.items[1], "duplicate axiom '" + ax.name + "'");
  const Sexp& ord = s.items[2];
  const Sexp& ind = s.items[3];
  if (ord.leaf || ind.leaf) err(s, "axiom bodies must be parenthesized lists");
  for (const Sexp& a : ord.items) {
    Atom at = parse_atom(a, defs.sig);
    if (!at.is_equality() && !defs.sig.is_ordinary_pred(at.pred))
      err(a, "'" + at.pred + "' is not an ordinary predicate");
    ax.ordinary.push_back(std::move(at));
  }
  for (const Sexp& a : ind.items) {
    Atom at = parse_atom(a, defs.sig);
    if (!defs.sig.is_inductive(at.pred))
      err(a, "'" + at.pred + "' is not an inductive predicate");
    ax.inductive.push_back(std::move(at));
  }
  ax.head = parse_atom(s.items[4], defs.sig);
  if (!defs.sig.is_inductive(ax.head.pred))
    err(s.items[4], "axiom head predicate '" + ax.head.pred +
                        "' is not inductive");
  defs.axioms.push_back(std::move(ax));
}

void parse_tree(const Sexp& s, const Signature& sig, ProofTreeSet& ts,
                std::map<NodeId, Sexp>& positions) {
  if (s.items.size() < 3) err(s, "expected (tree <name> <root-id> <nodes>...)");
  Tree tree;
  tree.name = leaf_token(s.items[1], "a tree name");
  for (const Tree& t : ts.trees)
    if (t.name == tree.name) err(s.items[1], "duplicate tree '" + tree.name + "'");
  tree.root = parse_id(s.items[2]);
  for (size_t i = 3; i < s.items.size(); ++i) {
    const Sexp& n = s.items[i];
    ProofNode node;
    size_t fixed;
    if (n.is("node")) {
      if (n.items.size() < 5)
        err(n, "expected (node <id> (seq ...) (rule ...) (children ...))");
      node.kind = NodeKind::Inner;
      node.id = parse_id(n.items[1]);
      node.sequent = parse_sequent(n.items[2], sig);
      node.rule = parse_rule(n.items[3], sig);
      const Sexp& ch = n.items[4];
      if (!ch.is("children")) err(ch, "expected (children <ids>...)");
      for (size_t k = 1; k < ch.items.size(); ++k)
        node.children.push_back(parse_id(ch.items[k]));
      fixed = 5;
    } else if (n.is("bud")) {
      if (n.items.size() < 4)
        err(n, "expected (bud <id> (seq ...) (companion <id>))");
      node.kind = NodeKind::Bud;
      node.id = parse_id(n.items[1]);
      node.sequent = parse_sequent(n.items[2], sig);
      const Sexp& comp = n.items[3];
      if (!comp.is("companion") || comp.items.size() != 2)
        err(comp, "expected (companion <id>)");
      node.companion = parse_id(comp.items[1]);
      fixed = 4;
    } else {
      err(n, "expected a (node ...) or (bud ...) form");
    }
    for (size_t k = fixed; k < n.items.size(); ++k) {
      const Sexp& extra = n.items[k];
      if (extra.is("tag") && extra.items.size() == 2)
        node.tag = leaf_token(extra.items[1], "a tag token");
      else
        err(extra, "unexpected clause " + extra.str());
    }
    if (ts.nodes.count(node.id))
      err(n.items[1], "duplicate node id " + node.id.str());
    positions.emplace(node.id, n.items[1]);
    tree.order.push_back(node.id);
    ts.nodes.emplace(node.id, std::move(node));
  }
  ts.trees.push_back(std::move(tree));
}

void parse_measure(const Sexp& s, const Signature& sig, MeasureSpec& ms) {
  if (s.items.size() != 3) err(s, "expected (measure (seq ...) (indices ...))");
  MeasureRule rule;
  rule.pattern = parse_sequent(s.items[1], sig);
  const Sexp& idx = s.items[2];
  if (!idx.is("indices")) err(idx, "expected (indices <k>...)");
  size_t niaa = iaa_occurrences(rule.pattern, sig).size();
  for (size_t i = 1; i < idx.items.size(); ++i) {
    size_t k = parse_nat(idx.items[i], "an occurrence index");
    if (k >= niaa)
      err(idx.items[i], "index " + std::to_string(k) +
                            " out of range: the pattern has " +
                            std::to_string(niaa) +
                            " inductive antecedent atom(s)");
    rule.indices.push_back(k);
  }
  ms.rules.push_back(std::move(rule));
}

void parse_precedence(const Sexp& s, const Signature& sig, PrecedenceSpec& ps) {
  for (size_t i = 1; i < s.items.size(); ++i) {
    const Sexp& chain = s.items[i];
    if (chain.leaf || chain.items.size() < 3 || !chain.items[0].leaf ||
        chain.items[0].token != "<")
      err(chain, "expected a chain (< <sym> <sym> ...)");
    std::vector<std::string> syms;
    for (size_t k = 1; k < chain.items.size(); ++k) {
      const std::string& name = leaf_token(chain.items[k], "a symbol");
      if (!sig.find(name))
        err(chain.items[k], "undeclared symbol '" + name + "' in precedence");
      syms.push_back(name);
    }
    for (size_t k = 0; k + 1 < syms.size(); ++k)
      ps.less.emplace_back(syms[k], syms[k + 1]);
    try {
      OrderingContext::from_pairs(ps.less);
    } catch (const std::invalid_argument& e) {
      err(chain, e.what());
    }
  }
}

void parse_ord_ext(const Sexp& s, const Signature& sig, OrdExtSpec& oe) {
  if (s.items.size() != 3) err(s, "expected (ord-ext <pred> (atoms ...))");
  const std::string& pred = leaf_token(s.items[1], "an ordinary predicate");
  if (!sig.is_ordinary_pred(pred))
    err(s.items[1], "'" + pred + "' is not an ordinary predicate");
  const Sexp& atoms = s.items[2];
  if (!atoms.is("atoms")) err(atoms, "expected (atoms <atom>...)");
  auto& ext = oe.extensions[pred];
  for (size_t i = 1; i < atoms.items.size(); ++i) {
    Atom a = parse_atom(atoms.items[i], sig);
    if (a.pred != pred)
      err(atoms.items[i], "extension atom for '" + pred + "' uses '" + a.pred + "'");
    if (!free_vars(a).empty())
      err(atoms.items[i], "extension atoms must be ground");
    ext.push_back(std::move(a));
  }
}

}  // namespace

ProofFile parse_proof_file(const std::string& text) {
  ProofFile pf;
  std::map<NodeId, Sexp> positions;
  for (const Sexp& form : parse_sexps(text)) {
    if (form.is("signature"))
      parse_signature(form, pf.defs.sig);
    else if (form.is("axiom"))
      parse_axiom(form, pf.defs);
    else if (form.is("tree"))
      parse_tree(form, pf.defs.sig, pf.trees, positions);
    else if (form.is("measure"))
      parse_measure(form, pf.defs.sig, pf.measures);
    else if (form.is("precedence"))
      parse_precedence(form, pf.defs.sig, pf.precedence);
    else if (form.is("ord-ext"))
      parse_ord_ext(form, pf.defs.sig, pf.ord_ext);
    else if (form.leaf)
      err(form, "stray token '" + form.token + "'");
    else
      err(form, "unknown form " + form.str());
  }
  try {
    pf.trees.rebuild_indices();
  } catch (const std::runtime_error& e) {
    // Attribute the integrity error to the node it names when possible.
    std::string msg = e.what();
    for (const auto& [id, at] : positions)
      if (msg.find(" " + id.str() + " ") != std::string::npos)
        throw ParseError(at.line, at.col, msg);
    throw ParseError(1, 1, msg);
  }
  return pf;
}

ProofFile load_proof_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_proof_file(buf.str());
}

// ----------------------------------------------------------------- printing

std::string print_term(const Term& t) {
  if (t.var || t.args.empty()) return t.head;
  std::string out = "(" + t.head;
  for (const Term& a : t.args) out += ' ' + print_term(a);
  return out + ")";
}

std::string print_atom(const Atom& a) {
  std::string out = "(" + a.pred;
  for (const Term& t : a.args) out += ' ' + print_term(t);
  return out + ")";
}

std::string print_formula(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::Atomic:
      return print_atom(f.atom);
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      std::string out = f.kind == Formula::Kind::And ? "(and" : "(or";
      for (const Formula& g : f.sub) out += ' ' + print_formula(g);
      return out + ")";
    }
    case Formula::Kind::Implies:
      return "(=> " + print_formula(f.sub[0]) + ' ' + print_formula(f.sub[1]) +
             ")";
    case Formula::Kind::Not:
      return "(not " + print_formula(f.sub[0]) + ")";
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      std::string out = f.kind == Formula::Kind::Forall ? "(forall (" : "(exists (";
      for (size_t i = 0; i < f.binders.size(); ++i) {
        if (i) out += ' ';
        out += f.binders[i];
      }
      return out + ") " + print_formula(f.sub[0]) + ")";
    }
  }
  return "?";
}

std::string print_sequent(const Sequent& s) {
  std::string out = "(seq (";
  for (size_t i = 0; i < s.ante.size(); ++i) {
    if (i) out += ' ';
    out += print_formula(s.ante[i]);
  }
  out += ") (";
  for (size_t i = 0; i < s.succ.size(); ++i) {
    if (i) out += ' ';
    out += print_formula(s.succ[i]);
  }
  return out + "))";
}

std::string print_rule(const RuleApp& r) {
  std::string out = "(rule ";
  out += rule_name(r.tag);
  switch (r.tag) {
    case RuleTag::Subst: {
      out += " (";
      bool first = true;
      for (const auto& [v, t] : r.subst.bindings()) {
        if (!first) out += ' ';
        first = false;
        out += "(" + v + ' ' + print_term(t) + ")";
      }
      out += ")";
      break;
    }
    case RuleTag::Gen:
      out += ' ' + print_atom(r.gen_principal);
      break;
    case RuleTag::Case: {
      out += ' ' + print_atom(r.case_principal) + " (branches";
      for (const auto& [ax, child] : r.branches)
        out += " (" + ax + ' ' + child.str() + ")";
      out += ")";
      break;
    }
    case RuleTag::Unfold:
      out += ' ' + r.unfold_axiom + ' ' + print_atom(r.unfold_principal);
      break;
    case RuleTag::Wk:
      for (const Formula& f : r.wk_dropped) out += ' ' + print_formula(f);
      break;
    case RuleTag::Cut:
      out += ' ' + print_formula(r.cut_formula);
      break;
    case RuleTag::AllR:
    case RuleTag::ExL: {
      out += " (";
      for (size_t i = 0; i < r.fresh_vars.size(); ++i) {
        if (i) out += ' ';
        out += r.fresh_vars[i];
      }
      out += ")";
      break;
    }
    case RuleTag::Ax:
      break;
    case RuleTag::Generic:
      out += ' ' + r.generic_name + (r.trace_preserving ? " true" : " false");
      break;
  }
  return out + ")";
}

std::string serialize_proof_file(const ProofFile& pf) {
  std::ostringstream out;
  const auto& symbols = pf.defs.sig.symbols();
  if (!symbols.empty()) {
    out << "(signature";
    for (const auto& [name, sym] : symbols) {
      const char* kind = sym.kind == SymbolKind::Function ? "fun"
                         : sym.kind == SymbolKind::InductivePred ? "ind"
                                                                 : "ord";
      out << "\n  (" << kind << ' ' << name << ' ' << sym.arity << ")";
    }
    out << ")\n\n";
  }
  for (const AxiomDef& ax : pf.defs.axioms) {
    out << "(axiom " << ax.name << " (";
    for (size_t i = 0; i < ax.ordinary.size(); ++i)
      out << (i ? " " : "") << print_atom(ax.ordinary[i]);
    out << ") (";
    for (size_t i = 0; i < ax.inductive.size(); ++i)
      out << (i ? " " : "") << print_atom(ax.inductive[i]);
    out << ") " << print_atom(ax.head) << ")\n";
  }
  for (const Tree& tree : pf.trees.trees) {
    out << "\n(tree " << tree.name << ' ' << tree.root.str();
    for (const NodeId& id : tree.order) {
      const ProofNode& n = pf.trees.node(id);
      if (n.kind == NodeKind::Inner) {
        out << "\n  (node " << id.str() << ' ' << print_sequent(n.sequent)
            << "\n    " << print_rule(n.rule) << " (children";
        for (const NodeId& c : n.children) out << ' ' << c.str();
        out << ")";
      } else {
        out << "\n  (bud " << id.str() << ' ' << print_sequent(n.sequent)
            << " (companion " << n.companion.str() << ")";
      }
      if (!n.tag.empty()) out << " (tag " << n.tag << ")";
      out << ")";
    }
    out << ")\n";
  }
  for (const MeasureRule& rule : pf.measures.rules) {
    out << "\n(measure " << print_sequent(rule.pattern) << " (indices";
    for (size_t k : rule.indices) out << ' ' << k;
    out << "))";
  }
  if (!pf.measures.rules.empty()) out << "\n";
  if (!pf.precedence.less.empty()) {
    out << "\n(precedence";
    for (const auto& [a, b] : pf.precedence.less)
      out << " (< " << a << ' ' << b << ")";
    out << ")\n";
  }
  for (const auto& [pred, atoms] : pf.ord_ext.extensions) {
    out << "\n(ord-ext " << pred << " (atoms";
    for (const Atom& a : atoms) out << ' ' << print_atom(a);
    out << "))\n";
  }
  return out.str();
}

}  // namespace cyclo
