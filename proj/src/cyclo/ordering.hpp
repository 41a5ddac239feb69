#pragma once

// The base ordering on (instances of) inductive antecedent atoms: a
// recursive path ordering with multiset status over a user-declared symbol
// precedence, plus its Dershowitz-Manna multiset extension.

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cyclo/terms.hpp"

namespace cyclo {

// Strict symbol precedence given as direct pairs; the context holds its
// transitive closure. Function and predicate symbols share one order.
struct OrderingContext {
  std::set<std::pair<std::string, std::string>> lt;

  // Builds the closure; throws std::invalid_argument if the declared pairs
  // are cyclic.
  static OrderingContext from_pairs(
      const std::vector<std::pair<std::string, std::string>>& pairs);

  bool prec_less(const std::string& a, const std::string& b) const {
    return lt.count({a, b}) != 0;
  }
};

// Recursive path ordering with multiset status for every symbol. Variables
// are minimal and mutually incomparable: x < t iff x occurs strictly in t.
bool rpo_less(const OrderingContext& ctx, const Term& a, const Term& b);

// IAAs are compared as terms whose root symbol is the predicate.
bool rpo_less(const OrderingContext& ctx, const Atom& a, const Atom& b);

// Dershowitz-Manna extension (difference form): A < B iff A != B and every
// element of A - B is rpo-smaller than some element of B - A.
bool multiset_less(const OrderingContext& ctx, const std::vector<Term>& a,
                   const std::vector<Term>& b);
bool multiset_less(const OrderingContext& ctx, const std::vector<Atom>& a,
                   const std::vector<Atom>& b);

}  // namespace cyclo
