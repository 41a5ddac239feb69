#pragma once

// First-order terms, atoms, a small formula grammar, multiset sequents and the
// substitution algebra. Everything here is immutable after construction and
// safe to share across threads.

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace cyclo {

enum class SymbolKind { Function, OrdinaryPred, InductivePred };

struct Symbol {
  std::string name;
  SymbolKind kind = SymbolKind::Function;
  unsigned arity = 0;
};

class SignatureError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Symbol table. A name has one fixed kind and arity; redeclaring it
// differently is an error, redeclaring it identically is a no-op.
class Signature {
public:
  void declare(const std::string& name, SymbolKind kind, unsigned arity);
  const Symbol* find(const std::string& name) const;
  bool is_function(const std::string& name) const;
  bool is_inductive(const std::string& name) const;
  bool is_ordinary_pred(const std::string& name) const;
  const std::map<std::string, Symbol>& symbols() const { return table_; }

private:
  std::map<std::string, Symbol> table_;
};

// A term is a variable or a function application; constants are 0-ary
// applications. `head` holds the variable name or the function symbol.
struct Term {
  bool var = true;
  std::string head;
  std::vector<Term> args;

  static Term mkvar(std::string name);
  static Term app(std::string fn, std::vector<Term> as = {});
  std::string str() const;
};

int cmp(const Term& a, const Term& b);
bool operator==(const Term& a, const Term& b);
inline bool operator!=(const Term& a, const Term& b) { return !(a == b); }
inline bool operator<(const Term& a, const Term& b) { return cmp(a, b) < 0; }

// Predicate atom or equality. Equalities use pred "=" with exactly two args.
struct Atom {
  std::string pred;
  std::vector<Term> args;

  static Atom make(std::string pred, std::vector<Term> as);
  static Atom equality(Term lhs, Term rhs);
  bool is_equality() const { return pred == "="; }
  std::string str() const;
};

int cmp(const Atom& a, const Atom& b);
bool operator==(const Atom& a, const Atom& b);
inline bool operator!=(const Atom& a, const Atom& b) { return !(a == b); }
inline bool operator<(const Atom& a, const Atom& b) { return cmp(a, b) < 0; }

// Formulas beyond atoms exist to express Cut formulas and the quantifier
// rules; only atoms and equalities participate in traces and measures.
struct Formula {
  enum class Kind { Atomic, And, Or, Implies, Not, Forall, Exists };
  Kind kind = Kind::Atomic;
  Atom atom;                          // Kind::Atomic
  std::vector<Formula> sub;           // connective operands / quantifier body
  std::vector<std::string> binders;   // Forall/Exists

  static Formula atomic(Atom a);
  bool is_atom() const { return kind == Kind::Atomic; }
  std::string str() const;
};

int cmp(const Formula& a, const Formula& b);
bool operator==(const Formula& a, const Formula& b);
inline bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }
inline bool operator<(const Formula& a, const Formula& b) { return cmp(a, b) < 0; }

// Sequent Gamma |- Delta with multiset semantics: the stored order is kept
// for deterministic occurrence indexing, equality ignores it.
struct Sequent {
  std::vector<Formula> ante;
  std::vector<Formula> succ;
  std::string str() const;
};

bool seq_equal(const Sequent& a, const Sequent& b);
int seq_cmp(const Sequent& a, const Sequent& b);

// Inductive antecedent atoms of a sequent, in antecedent occurrence order.
// Each entry is (index into ante, the atom).
std::vector<std::pair<size_t, Atom>> iaa_occurrences(const Sequent& s,
                                                     const Signature& sig);
std::vector<Atom> iaas(const Sequent& s, const Signature& sig);

// Finite mapping variable -> term. Identity bindings are never stored, so an
// extensionally-identity substitution compares equal to the empty one.
class Subst {
public:
  Subst() = default;
  explicit Subst(std::map<std::string, Term> bindings);

  void bind(const std::string& v, Term t);
  const Term* lookup(const std::string& v) const;
  bool is_identity() const { return b_.empty(); }
  const std::map<std::string, Term>& bindings() const { return b_; }

  Term operator()(const Term& t) const;
  Atom operator()(const Atom& a) const;
  Formula operator()(const Formula& f) const;
  Sequent operator()(const Sequent& s) const;

  // compose(s1, s2) applies s1 first: t[compose(s1,s2)] == t[s1][s2].
  static Subst compose(const Subst& s1, const Subst& s2);

  std::string str() const;

private:
  std::map<std::string, Term> b_;
};

bool operator==(const Subst& a, const Subst& b);
inline bool operator!=(const Subst& a, const Subst& b) { return !(a == b); }

std::set<std::string> free_vars(const Term& t);
std::set<std::string> free_vars(const Atom& a);
std::set<std::string> free_vars(const Formula& f);
std::set<std::string> free_vars(const Sequent& s);

// One-sided matching: returns s with pattern[s] == subject, or nullopt.
// `binding` variants extend an existing partial binding consistently.
std::optional<Subst> match(const Term& pattern, const Term& subject);
std::optional<Subst> match(const Atom& pattern, const Atom& subject);
bool match_into(const Term& pattern, const Term& subject,
                std::map<std::string, Term>& binding);
bool match_into(const Atom& pattern, const Atom& subject,
                std::map<std::string, Term>& binding);

// Restricted one-sided matching: only variables in `bindable` may be bound;
// every other pattern variable is a rigid name that must appear verbatim in
// the subject. Extends `binding` consistently, leaving it untouched on
// failure only at the call sites that save/restore it.
bool match_restricted(const Term& pattern, const Term& subject,
                      const std::set<std::string>& bindable,
                      std::map<std::string, Term>& binding);
bool match_restricted(const Atom& pattern, const Atom& subject,
                      const std::set<std::string>& bindable,
                      std::map<std::string, Term>& binding);

// Fresh variable naming: appends ASCII apostrophes until the name avoids the
// given set (x, x', x'', ...).
std::string fresh_var(const std::string& base, const std::set<std::string>& avoid);

// Multiset helpers over formulas (counted difference and inclusion).
std::vector<Formula> multiset_diff(const std::vector<Formula>& a,
                                   const std::vector<Formula>& b);
bool multiset_includes(const std::vector<Formula>& big,
                       const std::vector<Formula>& small);

}  // namespace cyclo
