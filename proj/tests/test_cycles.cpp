#include <cstdint>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "cyclo/cycles.hpp"
#include "cyclo/normalize.hpp"
#include "cyclo/ordering.hpp"

using namespace cyclo;
using namespace testutil;

namespace {

std::vector<std::vector<size_t>> complete_adj(size_t n) {
  std::vector<std::vector<size_t>> adj(n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (i != j) adj[i].push_back(j);
  return adj;
}

}  // namespace

TEST_SUITE("cycles") {

TEST_CASE("the skeleton chains root-to-bud paths by companionship") {
  ProofFile pf = load_fixture("nr.proof");
  ProofTreeSet ts = normalize(pf.trees).trees;
  Skeleton sk = build_skeleton(ts);

  REQUIRE(sk.paths.size() == 3);  // ordered by bud id
  CHECK(sk.paths[0].bud == nid("10.2"));
  CHECK(sk.paths[0].root == nid("1"));
  CHECK(sk.paths[0].nodes == nids({"1", "3", "9", "15", "16", "10", "10.2"}));
  CHECK(sk.paths[1].bud == nid("18"));
  CHECK(sk.paths[1].nodes == nids({"10.1", "12", "13", "14", "18"}));
  CHECK(sk.paths[2].bud == nid("24"));
  CHECK(sk.paths[2].nodes ==
        nids({"1", "3", "5", "6", "7", "19", "20", "8", "24"}));

  REQUIRE(sk.adj.size() == 3);
  CHECK(sk.adj[0] == std::vector<size_t>{1});
  CHECK(sk.adj[1] == std::vector<size_t>{1});
  CHECK(sk.adj[2] == std::vector<size_t>{0, 2});
}

TEST_CASE("simple cycle enumeration is canonical and sorted") {
  // two disjoint self-reaching loops sharing vertex 0
  std::vector<std::vector<size_t>> adj = {{1, 2}, {0}, {0}};
  auto cycles = simple_cycles(adj);
  REQUIRE(cycles.size() == 2);
  CHECK(cycles[0] == std::vector<size_t>{0, 1});
  CHECK(cycles[1] == std::vector<size_t>{0, 2});

  // self-loops are 1-cycles
  auto self_loop = simple_cycles({{0}});
  REQUIRE(self_loop.size() == 1);
  CHECK(self_loop[0] == std::vector<size_t>{0});

  CHECK(simple_cycles({}).empty());
  CHECK(simple_cycles({{}, {}}).empty());
  // a DAG has none
  CHECK(simple_cycles({{1, 2}, {2}, {}}).empty());

  // edges must stay in range
  CHECK_THROWS_AS(simple_cycles({{7}}), std::invalid_argument);

  // K3: three 2-cycles and two 3-cycles
  auto k3 = simple_cycles(complete_adj(3));
  REQUIRE(k3.size() == 5);
  CHECK(k3[0] == std::vector<size_t>{0, 1});
  CHECK(k3[1] == std::vector<size_t>{0, 1, 2});
  CHECK(k3[2] == std::vector<size_t>{0, 2});
  CHECK(k3[3] == std::vector<size_t>{0, 2, 1});
  CHECK(k3[4] == std::vector<size_t>{1, 2});
}

TEST_CASE("closed-form complete-digraph cycle counts") {
  CHECK(complete_digraph_cycle_count(2) == 1);
  CHECK(complete_digraph_cycle_count(3) == 5);
  CHECK(complete_digraph_cycle_count(4) == 20);
  CHECK(complete_digraph_cycle_count(5) == 84);
  CHECK(complete_digraph_cycle_count(6) == 409);

  // the enumerator agrees on small instances
  for (unsigned n = 2; n <= 6; ++n) {
    CAPTURE(n);
    CHECK(simple_cycles(complete_adj(n)).size() ==
          complete_digraph_cycle_count(n));
  }

  CHECK_THROWS_AS(complete_digraph_cycle_count(0), std::invalid_argument);
  CHECK_THROWS_AS(complete_digraph_cycle_count(1), std::invalid_argument);
  // counts grow monotonically while they fit in 64 bits, then overflow
  CHECK(complete_digraph_cycle_count(20) > complete_digraph_cycle_count(19));
  CHECK_THROWS_AS(complete_digraph_cycle_count(21), std::overflow_error);
}

TEST_CASE("cycle enumeration over the fixture skeletons") {
  ProofFile nr = load_fixture("nr.proof");
  ProofTreeSet ts = normalize(nr.trees).trees;
  Digraph g = build_digraph(ts, DigraphMode::Analysis);
  auto cycles = enumerate_ncycles(g);
  REQUIRE(cycles.size() == 2);
  CHECK(cycles[0].paths == std::vector<size_t>{1});
  CHECK(cycles[1].paths == std::vector<size_t>{2});

  ProofFile shared = load_fixture("shared-path.proof");
  Digraph g4 = build_digraph(shared.trees, DigraphMode::Analysis);
  auto c4 = enumerate_ncycles(g4);
  REQUIRE(c4.size() == 2);
  CHECK(c4[0].paths == std::vector<size_t>{0, 1});
  CHECK(c4[1].paths == std::vector<size_t>{0, 2});
}

TEST_CASE("the minimal-cycle criterion accepts the running fixture") {
  ProofFile pf = load_fixture("nr.proof");
  ProofTreeSet ts = normalize(pf.trees).trees;
  Digraph g = build_digraph(ts, DigraphMode::Analysis);
  OrderingContext ord = OrderingContext::from_pairs(pf.precedence.less);

  PriorCriterionReport rep =
      check_prior_criterion(ord, pf.measures, pf.defs, g);
  CHECK(rep.sound);
  REQUIRE(rep.cycles.size() == 2);
  for (const CycleEntry& e : rep.cycles) {
    CHECK(e.discharged);
    REQUIRE(e.constraints.size() == 1);
    CHECK(e.constraints[0].discharged);
    CHECK(e.constraints[0].failure.empty());
  }
  CHECK(rep.cycles[0].constraints[0].bud == nid("18"));
  CHECK(rep.cycles[1].constraints[0].bud == nid("24"));
}

TEST_CASE("the minimal-cycle criterion rejects the counterexamples") {
  ProofFile st = load_fixture("stutter.proof");
  Digraph gs = build_digraph(st.trees, DigraphMode::Analysis);
  OrderingContext ord;
  PriorCriterionReport rs = check_prior_criterion(ord, st.measures, st.defs, gs);
  CHECK(!rs.sound);
  REQUIRE(rs.cycles.size() == 1);
  REQUIRE(rs.cycles[0].constraints.size() == 1);
  CHECK(!rs.cycles[0].constraints[0].discharged);
  CHECK(rs.cycles[0].constraints[0].bud == nid("2"));
  CHECK(rs.cycles[0].constraints[0].failure ==
        "no strict decrease: the measures cancel completely");

  ProofFile f4 = load_fixture("shared-path.proof");
  Digraph g4 = build_digraph(f4.trees, DigraphMode::Analysis);
  OrderingContext o4 = OrderingContext::from_pairs(f4.precedence.less);
  PriorCriterionReport r4 = check_prior_criterion(o4, f4.measures, f4.defs, g4);
  CHECK(!r4.sound);
  REQUIRE(r4.cycles.size() == 2);

  // the stuttering first path fails identically inside both cycles
  const CycleEntry& c01 = r4.cycles[0];
  REQUIRE(c01.constraints.size() == 2);
  CHECK(!c01.discharged);
  CHECK(c01.constraints[0].path_index == 0);
  CHECK(c01.constraints[0].bud == nid("2"));
  CHECK(!c01.constraints[0].discharged);
  CHECK(c01.constraints[1].bud == nid("16"));
  CHECK(!c01.constraints[1].discharged);

  const CycleEntry& c02 = r4.cycles[1];
  REQUIRE(c02.constraints.size() == 2);
  CHECK(!c02.discharged);
  CHECK(c02.constraints[0].bud == nid("2"));
  CHECK(!c02.constraints[0].discharged);
  CHECK(c02.constraints[0].failure == c01.constraints[0].failure);
  CHECK(c02.constraints[1].bud == nid("18"));
  CHECK(c02.constraints[1].discharged);  // the descending path itself is fine
}

TEST_CASE("redundancy compares per-bud and per-cycle constraint counts") {
  ProofFile nr = load_fixture("nr.proof");
  ProofTreeSet ts = normalize(nr.trees).trees;
  Digraph g = build_digraph(ts, DigraphMode::Analysis);
  Redundancy r = redundancy_report(g);
  CHECK(r.distinct == 2);
  CHECK(r.total == 2);

  // a path shared by several cycles is re-checked per cycle
  ProofFile f4 = load_fixture("shared-path.proof");
  Digraph g4 = build_digraph(f4.trees, DigraphMode::Analysis);
  Redundancy r4 = redundancy_report(g4);
  CHECK(r4.distinct == 3);
  CHECK(r4.total == 4);
  CHECK(r4.distinct < r4.total);
}

TEST_CASE("repeated-root circular chains are excluded") {
  // one root with two returning buds: chaining both paths into a 2-cycle
  // would pass through root 1 twice, so only the two self-loops remain
  ProofFile pf = parse_proof_file(
      "(signature (fun 0 0) (fun s 1) (ind N 1))\n"
      "(axiom n0 () () (N 0))\n"
      "(axiom n1 () ((N x)) (N (s x)))\n"
      "(tree a 1\n"
      "  (node 1 (seq ((N x)) ((N x))) (rule Generic split true) (children 2 4))\n"
      "  (node 2 (seq ((N x)) ((N x))) (rule Subst ()) (children 3))\n"
      "  (bud 3 (seq ((N x)) ((N x))) (companion 1))\n"
      "  (node 4 (seq ((N x)) ((N x))) (rule Subst ()) (children 5))\n"
      "  (bud 5 (seq ((N x)) ((N x))) (companion 1)))");
  Skeleton sk = build_skeleton(pf.trees);
  REQUIRE(sk.paths.size() == 2);
  CHECK(sk.paths[0].nodes == nids({"1", "2", "3"}));
  CHECK(sk.paths[1].nodes == nids({"1", "4", "5"}));
  CHECK(sk.adj[0] == std::vector<size_t>{0, 1});
  CHECK(sk.adj[1] == std::vector<size_t>{0, 1});

  // the raw enumerator sees three cycles, including the forbidden chain
  auto raw = simple_cycles(sk.adj);
  REQUIRE(raw.size() == 3);
  CHECK(raw[1] == std::vector<size_t>{0, 1});

  Digraph g = build_digraph(pf.trees, DigraphMode::Analysis);
  auto cycles = enumerate_ncycles(g);
  REQUIRE(cycles.size() == 2);
  CHECK(cycles[0].paths == std::vector<size_t>{0});
  CHECK(cycles[1].paths == std::vector<size_t>{1});

  // redundancy counts only the admitted cycles
  Redundancy r = redundancy_report(g);
  CHECK(r.distinct == 2);
  CHECK(r.total == 2);
}

}  // TEST_SUITE
