#include "cyclo/ordering.hpp"

#include <algorithm>
#include <stdexcept>

namespace cyclo {

OrderingContext OrderingContext::from_pairs(
    const std::vector<std::pair<std::string, std::string>>& pairs) {
  OrderingContext ctx;
  ctx.lt.insert(pairs.begin(), pairs.end());
  // Transitive closure by saturation; the relation is tiny.
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<std::pair<std::string, std::string>> add;
    for (const auto& [a, b] : ctx.lt)
      for (const auto& [c, d] : ctx.lt)
        if (b == c && !ctx.lt.count({a, d})) add.emplace_back(a, d);
    for (auto& p : add) grew |= ctx.lt.insert(std::move(p)).second;
  }
  for (const auto& [a, b] : ctx.lt)
    if (a == b)
      throw std::invalid_argument("precedence is cyclic at symbol '" + a + "'");
  return ctx;
}

namespace {

bool occurs_strictly(const Term& x, const Term& t) {
  if (t.var) return false;
  for (const Term& a : t.args) {
    if (a == x) return true;
    if (occurs_strictly(x, a)) return true;
  }
  return false;
}

// Multiset difference under syntactic equality.
std::vector<Term> mdiff(const std::vector<Term>& a, const std::vector<Term>& b) {
  std::vector<Term> out = a;
  for (const Term& t : b) {
    auto it = std::find(out.begin(), out.end(), t);
    if (it != out.end()) out.erase(it);
  }
  return out;
}

bool mul_less(const OrderingContext& ctx, const std::vector<Term>& a,
              const std::vector<Term>& b) {
  std::vector<Term> ra = mdiff(a, b);
  std::vector<Term> rb = mdiff(b, a);
  if (ra.empty() && rb.empty()) return false;  // equal multisets
  for (const Term& x : ra) {
    bool dominated = false;
    for (const Term& y : rb)
      if (rpo_less(ctx, x, y)) {
        dominated = true;
        break;
      }
    if (!dominated) return false;
  }
  return true;
}

}  // namespace

bool rpo_less(const OrderingContext& ctx, const Term& a, const Term& b) {
  if (a == b) return false;
  if (b.var) return false;                      // nothing sits below a variable
  if (a.var) return occurs_strictly(a, b);      // variables are minimal
  // (1) a is below or equal to some direct subterm of b
  for (const Term& bi : b.args)
    if (a == bi || rpo_less(ctx, a, bi)) return true;
  // (2) smaller head symbol and all of a's arguments below b
  if (ctx.prec_less(a.head, b.head)) {
    for (const Term& aj : a.args)
      if (!rpo_less(ctx, aj, b)) return false;
    return true;
  }
  // (3) equal head symbol, arguments compared as multisets
  if (a.head == b.head) return mul_less(ctx, a.args, b.args);
  return false;
}

bool rpo_less(const OrderingContext& ctx, const Atom& a, const Atom& b) {
  return rpo_less(ctx, Term::app(a.pred, a.args), Term::app(b.pred, b.args));
}

bool multiset_less(const OrderingContext& ctx, const std::vector<Term>& a,
                   const std::vector<Term>& b) {
  return mul_less(ctx, a, b);
}

bool multiset_less(const OrderingContext& ctx, const std::vector<Atom>& a,
                   const std::vector<Atom>& b) {
  std::vector<Term> ta, tb;
  for (const Atom& x : a) ta.push_back(Term::app(x.pred, x.args));
  for (const Atom& x : b) tb.push_back(Term::app(x.pred, x.args));
  return mul_less(ctx, ta, tb);
}

}  // namespace cyclo
