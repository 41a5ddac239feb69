#pragma once

// Bounded-depth standard-model evaluation: ground-term universes, iterated
// approximants of the inductive definitions, and a sound three-valued reading
// of ground formulas and sequents.

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "cyclo/rules.hpp"
#include "cyclo/terms.hpp"

namespace cyclo {

// Finite set of ground terms, sorted and deduplicated.
struct Universe {
  std::vector<Term> terms;
  bool contains(const Term& t) const;
};

// All ground terms over the signature's function symbols up to the given
// nesting depth (constants have depth 0); closed under subterms by
// construction. Throws std::runtime_error when more than `cap` terms would be
// produced.
Universe ground_universe(const Signature& sig, unsigned depth,
                         std::size_t cap = 100000);

// Fixed extensions of the ordinary predicates (ground atoms). Predicates with
// no entry have the empty extension.
using OrdinaryExtensions = std::map<std::string, std::set<Atom>>;

// k-th stage of the forward-chaining construction of the inductive
// predicates' least prefixed point, arguments ranging over U. Monotone in k
// and in U.
struct Approximant {
  unsigned k = 0;
  std::map<std::string, std::set<Atom>> extension;
  bool holds(const Atom& a) const;
};

Approximant approximant(const InductiveDefSet& defs,
                        const OrdinaryExtensions& ords, unsigned k,
                        const Universe& U);

// Enumerator order implements the Kleene lattice: False < Unknown < True.
enum class Truth { False = 0, Unknown = 1, True = 2 };

const char* truth_name(Truth t);

// Three-valued evaluation of a ground formula. An inductive atom inside the
// approximant is true; outside it is `unknown`, since it may enter at a later
// stage. Ordinary atoms and equalities are decided exactly. Connectives are
// Kleene (and = min, or = max); quantifiers range over U.
Truth eval_ground_formula(const InductiveDefSet& defs,
                          const OrdinaryExtensions& ords, const Approximant& A,
                          const Universe& U, const Formula& f);

// Ground sequent reading: true when some succedent is true or some antecedent
// is false; false when every antecedent is true and every succedent is
// definitively false; unknown otherwise. Throws std::invalid_argument when
// the sequent has free variables.
Truth eval_ground_sequent(const InductiveDefSet& defs,
                          const OrdinaryExtensions& ords, const Approximant& A,
                          const Universe& U, const Sequent& s);

}  // namespace cyclo
