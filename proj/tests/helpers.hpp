#pragma once

// Shared builders for the unit suites: fixture loading and programmatic
// construction of the running signature (naturals plus the binary relation).

#include <string>
#include <vector>

#include "cyclo/format.hpp"
#include "cyclo/rules.hpp"
#include "cyclo/terms.hpp"

namespace testutil {

using namespace cyclo;

inline std::string fixture_path(const std::string& name) {
  return std::string(CYCLO_FIXTURE_DIR) + "/" + name;
}

inline ProofFile load_fixture(const std::string& name) {
  return load_proof_file(fixture_path(name));
}

inline Term v(const std::string& n) { return Term::mkvar(n); }
inline Term z() { return Term::app("0"); }
inline Term sv(Term t) { return Term::app("s", {std::move(t)}); }
inline Term snum(unsigned k) {
  Term t = z();
  for (unsigned i = 0; i < k; ++i) t = sv(std::move(t));
  return t;
}
inline Atom nat(Term t) { return Atom::make("N", {std::move(t)}); }
inline Atom rel(Term a, Term b) {
  return Atom::make("R", {std::move(a), std::move(b)});
}
inline Atom eq(Term a, Term b) {
  return Atom::equality(std::move(a), std::move(b));
}
inline Formula fa(Atom a) { return Formula::atomic(std::move(a)); }

inline Sequent mkseq(std::vector<Formula> a, std::vector<Formula> s) {
  Sequent q;
  q.ante = std::move(a);
  q.succ = std::move(s);
  return q;
}

inline NodeId nid(const std::string& text) {
  auto id = NodeId::parse(text);
  if (!id) throw std::invalid_argument("bad node id literal: " + text);
  return *id;
}

inline std::vector<NodeId> nids(const std::vector<std::string>& texts) {
  std::vector<NodeId> out;
  for (const auto& t : texts) out.push_back(nid(t));
  return out;
}

// The running definition set: N (zero and successor) and R over pairs.
inline InductiveDefSet nr_defs() {
  InductiveDefSet d;
  d.sig.declare("0", SymbolKind::Function, 0);
  d.sig.declare("s", SymbolKind::Function, 1);
  d.sig.declare("N", SymbolKind::InductivePred, 1);
  d.sig.declare("R", SymbolKind::InductivePred, 2);

  AxiomDef n0;
  n0.name = "n0";
  n0.head = nat(z());
  AxiomDef n1;
  n1.name = "n1";
  n1.inductive = {nat(v("x"))};
  n1.head = nat(sv(v("x")));
  AxiomDef r0;
  r0.name = "r0";
  r0.head = rel(z(), v("y"));
  AxiomDef r1;
  r1.name = "r1";
  r1.inductive = {rel(v("x"), z())};
  r1.head = rel(sv(v("x")), z());
  AxiomDef r2;
  r2.name = "r2";
  r2.inductive = {rel(sv(sv(v("x"))), v("y"))};
  r2.head = rel(sv(v("x")), sv(v("y")));

  d.axioms = {n0, n1, r0, r1, r2};
  return d;
}

}  // namespace testutil
