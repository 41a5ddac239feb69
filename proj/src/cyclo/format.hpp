#pragma once

// Textual format for definition sets, pre-proof tree-sets, measure rules and
// precedence declarations: an s-expression reader, the proof-file object
// model, structural validation and a round-tripping serializer.

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "cyclo/ids.hpp"
#include "cyclo/rules.hpp"
#include "cyclo/terms.hpp"

namespace cyclo {

class ParseError : public std::runtime_error {
public:
  ParseError(size_t line, size_t col, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ", col " +
                           std::to_string(col) + ": " + what),
        line(line),
        col(col) {}
  size_t line;
  size_t col;
};

// ------------------------------------------------------------ s-expressions

struct Sexp {
  bool leaf = true;          // single token vs parenthesized list
  std::string token;         // leaf payload
  std::vector<Sexp> items;   // list payload
  size_t line = 0, col = 0;  // 1-based position of the token / open paren

  bool is(const std::string& head) const {
    return !leaf && !items.empty() && items[0].leaf && items[0].token == head;
  }
  std::string str() const;
};

// Tokenizer/reader for the whole input: a sequence of top-level forms.
// Tokens are maximal runs of characters other than whitespace, parentheses
// and ';'. Comments run from ';' to end of line.
std::vector<Sexp> parse_sexps(const std::string& text);

// ------------------------------------------------------------- object model

enum class NodeKind { Inner, Bud };

struct ProofNode {
  NodeId id;
  Sequent sequent;
  NodeKind kind = NodeKind::Inner;
  RuleApp rule;                  // Inner nodes; leaves are 0-child inner nodes
  std::vector<NodeId> children;  // Inner nodes
  NodeId companion;              // Bud nodes
  std::string tag;               // optional annotation, e.g. "*"
};

struct Tree {
  std::string name;
  NodeId root;
  std::vector<NodeId> order;  // declaration order of the tree's nodes
};

// The tree-set plus the induction function (each bud's companion). Companions
// may live in a different tree than their bud.
struct ProofTreeSet {
  std::vector<Tree> trees;
  std::map<NodeId, ProofNode> nodes;
  std::map<NodeId, NodeId> parent;       // derived: child id -> parent id
  std::map<NodeId, size_t> tree_index;   // derived: node id -> index in trees

  const ProofNode& node(const NodeId& id) const;
  ProofNode& node(const NodeId& id);
  bool has(const NodeId& id) const { return nodes.count(id) != 0; }
  std::vector<NodeId> buds() const;
  std::set<NodeId> companions() const;
  const Tree& tree_of(const NodeId& id) const;

  // Recomputes parent/tree_index from trees+nodes and checks structural
  // invariants: resolvable ids, unique parents, per-tree reachability,
  // budless children, bud/companion sequent equality.
  void rebuild_indices();
};

// One measure rule: sequents matching `pattern` (bijectively, with the
// pattern's variables bindable) get the measure consisting of the pattern
// IAA occurrences selected by `indices` (0-based).
struct MeasureRule {
  Sequent pattern;
  std::vector<size_t> indices;
};

struct MeasureSpec {
  std::vector<MeasureRule> rules;  // ordered; first matching pattern wins

  // Selects antecedent occurrence indices of `subject` for its measure. A
  // sequent matching no rule gets all of its IAA occurrences.
  std::vector<size_t> select(const Sequent& subject, const Signature& sig) const;
};

// Bijective sequent match: every pattern formula is paired with a distinct
// subject formula on the same side with none left over, binding exactly the
// pattern's variables. Returns, for each pattern antecedent position, the
// matched subject antecedent position.
std::optional<std::vector<size_t>> match_sequent_pattern(const Sequent& pattern,
                                                         const Sequent& subject);

// Symbol precedence declared as chains (< a b c) meaning a < b < c.
struct PrecedenceSpec {
  std::vector<std::pair<std::string, std::string>> less;  // direct pairs
};

// Extensions of ordinary predicates for the model-based evaluator; absent
// predicates have the empty extension.
struct OrdExtSpec {
  std::map<std::string, std::vector<Atom>> extensions;
};

struct ProofFile {
  InductiveDefSet defs;  // carries the signature
  ProofTreeSet trees;
  MeasureSpec measures;
  PrecedenceSpec precedence;
  OrdExtSpec ord_ext;
};

// ------------------------------------------------------------ parse / print

// Parses a whole .proof document. Throws ParseError with input positions on
// syntax errors and on reference errors (unknown id, arity mismatch,
// duplicate axiom, bud/companion sequent mismatch, ...).
ProofFile parse_proof_file(const std::string& text);
ProofFile load_proof_file(const std::string& path);

// Term/atom/formula/sequent in the same syntax the parser reads.
std::string print_term(const Term& t);
std::string print_atom(const Atom& a);
std::string print_formula(const Formula& f);
std::string print_sequent(const Sequent& s);
std::string print_rule(const RuleApp& r);

// Whole-document serializer; parse(serialize(x)) is structurally equal to x.
std::string serialize_proof_file(const ProofFile& pf);

}  // namespace cyclo
