#include <catch_amalgamated.hpp>

#include <random>

#include "fixtures.hpp"

using namespace valence;
using namespace fixtures;

namespace {

PathWord pw(const GAutomaton& a, std::initializer_list<const char*> names) {
  PathWord p;
  for (const char* n : names) p.edges.push_back(a.edge_id(n));
  return p;
}

}  // namespace

TEST_CASE("pumpability on the integer loop pair") {
  GAutomaton a1 = make_a1();
  PathWord eps = PathWord::empty_at(a1.vertex_id("q"));
  auto both = is_pumpable(a1, pw(a1, {"e_a", "e_A"}), eps);
  REQUIRE(both.verdict.yes());
  REQUIRE(pump_witness_valid(a1, *both.witness));
  auto single = is_pumpable(a1, pw(a1, {"e_a"}), eps);
  REQUIRE(single.verdict.yes());
  REQUIRE(single.witness->alpha.size() == 2);  // e_a completed by e_A
}

TEST_CASE("positive loops are not pumpable when nothing cancels") {
  GAutomaton a5 = make_a5();
  PathWord eps = PathWord::empty_at(a5.vertex_id("q"));
  REQUIRE(is_pumpable(a5, pw(a5, {"e_a"}), eps).verdict.no());
  REQUIRE(in_M(a5, pw(a5, {"e_a"}), eps, a5.vertex_id("q")).verdict.no());
}

TEST_CASE("the empty path is always in M") {
  GAutomaton a1 = make_a1();
  PathWord eps = PathWord::empty_at(a1.vertex_id("q"));
  auto v = in_M(a1, PathWord::empty_at(a1.vertex_id("q")), eps, a1.vertex_id("q"));
  REQUIRE(v.verdict.yes());
  REQUIRE(pump_witness_valid(a1, *v.witness));
}

TEST_CASE("membership checks the base vertex") {
  GAutomaton a2 = make_a2();
  PathWord eps = PathWord::empty_at(a2.vertex_id("q0"));
  PathWord sts = pw(a2, {"e_s01", "e_t1", "e_s10"});
  REQUIRE(in_M(a2, sts, eps, a2.vertex_id("q0")).verdict.yes());
  PathWord at_q1 = pw(a2, {"e_t1"});
  auto wrong = in_M(a2, at_q1, eps, a2.vertex_id("q0"));
  REQUIRE(wrong.verdict.no());
  REQUIRE(wrong.verdict.reason == "sigma is not based at p");
  // but it is pumpable, and a member at its own vertex
  REQUIRE(in_M(a2, at_q1, eps, a2.vertex_id("q1")).verdict.yes());
}

TEST_CASE("enumerating M on the fixtures") {
  GAutomaton a5 = make_a5();
  MonoidView m5 = enumerate_M(a5, PathWord::empty_at(a5.vertex_id("q")), a5.vertex_id("q"), 4);
  REQUIRE(m5.members.size() == 1);
  REQUIRE(m5.members[0].empty());

  GAutomaton a1 = make_a1();
  MonoidView m1 = enumerate_M(a1, PathWord::empty_at(a1.vertex_id("q")), a1.vertex_id("q"), 2);
  REQUIRE(m1.members.size() == 7);  // eps, two loops, four length-2 loops
  for (const PumpWitness& w : m1.witnesses) REQUIRE(pump_witness_valid(a1, w));

  GAutomaton a2 = make_a2();
  MonoidView m2 = enumerate_M(a2, PathWord::empty_at(a2.vertex_id("q0")), a2.vertex_id("q0"), 2);
  auto has = [&](const PathWord& p) {
    return std::find(m2.members.begin(), m2.members.end(), p) != m2.members.end();
  };
  REQUIRE(has(pw(a2, {"e_t0"})));
  REQUIRE(has(pw(a2, {"e_T0"})));
  REQUIRE(has(pw(a2, {"e_s01", "e_s10"})));
  REQUIRE_FALSE(has(pw(a2, {"e_t1"})));  // based at q1, not q0
}

TEST_CASE("double loops are pumpable too") {
  GAutomaton a2 = make_a2();
  PathWord eps = PathWord::empty_at(a2.vertex_id("q0"));
  REQUIRE(in_M(a2, pw(a2, {"e_t0", "e_t0"}), eps, a2.vertex_id("q0")).verdict.yes());
}

TEST_CASE("witness concatenation follows the merge construction") {
  GAutomaton a1 = make_a1();
  PathWord eps = PathWord::empty_at(a1.vertex_id("q"));
  VertexId q = a1.vertex_id("q");
  auto w1 = in_M(a1, pw(a1, {"e_a"}), eps, q);
  auto w2 = in_M(a1, pw(a1, {"e_A"}), eps, q);
  REQUIRE(w1.verdict.yes());
  REQUIRE(w2.verdict.yes());
  PumpWitness merged = concat_witness(a1, *w1.witness, *w2.witness);
  REQUIRE(merged.sigma == pw(a1, {"e_a", "e_A"}));
  REQUIRE(pump_witness_valid(a1, merged));
  // the merged accepting path is a permutation of the two originals
  REQUIRE(merged.alpha.size() == w1.witness->alpha.size() + w2.witness->alpha.size());

  SECTION("concatenating with the empty witness keeps sigma") {
    auto we = in_M(a1, PathWord::empty_at(q), eps, q);
    PumpWitness right = concat_witness(a1, *w1.witness, *we.witness);
    REQUIRE(right.sigma == pw(a1, {"e_a"}));
    REQUIRE(pump_witness_valid(a1, right));
    PumpWitness both = concat_witness(a1, *we.witness, *we.witness);
    REQUIRE(both.sigma.empty());
    REQUIRE(pump_witness_valid(a1, both));
  }
  SECTION("mismatched contexts are rejected") {
    GAutomaton a2 = make_a2();
    auto other = in_M(a2, pw(a2, {"e_t0"}), PathWord::empty_at(a2.vertex_id("q0")), a2.vertex_id("q0"));
    REQUIRE_THROWS_AS(concat_witness(a1, *w1.witness, *other.witness), UsageError);
  }
}

TEST_CASE("monoid closure on sampled pairs") {
  GAutomaton a2 = make_a2();
  PathWord eps = PathWord::empty_at(a2.vertex_id("q0"));
  VertexId q0 = a2.vertex_id("q0");
  MonoidView m = enumerate_M(a2, eps, q0, 3);
  REQUIRE(m.members.size() >= 6);
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t i = rng() % m.members.size();
    const std::size_t j = rng() % m.members.size();
    PathWord prod = path_concat(a2, m.members[i], m.members[j]);
    REQUIRE(in_M(a2, prod, eps, q0).verdict.yes());
    PumpWitness merged = concat_witness(a2, m.witnesses[i], m.witnesses[j]);
    REQUIRE(pump_witness_valid(a2, merged));
    REQUIRE(merged.sigma == prod);
  }
}

TEST_CASE("downward closure rebuilds witnesses for scattered subloops") {
  GAutomaton a1 = make_a1();
  PathWord eps = PathWord::empty_at(a1.vertex_id("q"));
  VertexId q = a1.vertex_id("q");

  SECTION("tau = sigma") {
    auto w = in_M(a1, pw(a1, {"e_a", "e_A"}), eps, q);
    PumpWitness down = downward_witness(a1, *w.witness, pw(a1, {"e_a", "e_A"}));
    REQUIRE(down.sigma == pw(a1, {"e_a", "e_A"}));
    REQUIRE(pump_witness_valid(a1, down));
  }
  SECTION("tau = empty") {
    auto w = in_M(a1, pw(a1, {"e_a", "e_A"}), eps, q);
    PumpWitness down = downward_witness(a1, *w.witness, PathWord::empty_at(q));
    REQUIRE(down.sigma.empty());
    REQUIRE(pump_witness_valid(a1, down));
  }
  SECTION("a scattered subloop of a length-4 loop") {
    auto w = in_M(a1, pw(a1, {"e_a", "e_A", "e_A", "e_a"}), eps, q);
    REQUIRE(w.verdict.yes());
    PumpWitness down = downward_witness(a1, *w.witness, pw(a1, {"e_a", "e_a"}));
    REQUIRE(down.sigma == pw(a1, {"e_a", "e_a"}));
    REQUIRE(pump_witness_valid(a1, down));
    REQUIRE(path_weight(a1, down.alpha).is_zero());
  }
  SECTION("tau must embed and sit at the base") {
    auto w = in_M(a1, pw(a1, {"e_a", "e_A"}), eps, q);
    REQUIRE_THROWS_AS(downward_witness(a1, *w.witness, pw(a1, {"e_A", "e_A"})), UsageError);
  }
}

TEST_CASE("downward closure on sampled subloops") {
  GAutomaton a2 = make_a2();
  PathWord eps = PathWord::empty_at(a2.vertex_id("q0"));
  VertexId q0 = a2.vertex_id("q0");
  MonoidView m = enumerate_M(a2, eps, q0, 4);
  std::mt19937_64 rng(4096);
  int done = 0;
  for (int trial = 0; trial < 400 && done < 60; ++trial) {
    const std::size_t i = rng() % m.members.size();
    const PathWord& sigma = m.members[i];
    PathWord tau;
    for (EdgeId e : sigma.edges)
      if (rng() % 2) tau.edges.push_back(e);
    if (tau.empty()) tau.anchor = q0;
    if (!path_is_valid(a2, tau) || !path_closed(a2, tau)) continue;
    if (!tau.empty() && path_source(a2, tau) != q0) continue;
    ++done;
    REQUIRE(in_M(a2, tau, eps, q0).verdict.yes());
    PumpWitness down = downward_witness(a2, m.witnesses[i], tau);
    REQUIRE(pump_witness_valid(a2, down));
    REQUIRE(down.sigma == tau);
  }
  REQUIRE(done >= 30);
}

TEST_CASE("pumpable members are promising and block sums vanish") {
  GAutomaton a2 = make_a2();
  PathWord eps = PathWord::empty_at(a2.vertex_id("q0"));
  MonoidView m = enumerate_M(a2, eps, a2.vertex_id("q0"), 3);
  for (std::size_t i = 0; i < m.members.size(); ++i) {
    REQUIRE(is_promising(a2, m.members[i]).verdict.yes());
    GroupVector total = GroupVector::zero(a2.spec());
    for (const PathWord& b : m.witnesses[i].blocks) total = total + path_weight(a2, b);
    REQUIRE(total.is_zero());
  }
}

TEST_CASE("shrink trims flanks below the vertex count") {
  SECTION("omega = sigma gives empty flanks") {
    GAutomaton a2 = make_a2();
    PathWord eps = PathWord::empty_at(a2.vertex_id("q0"));
    PathWord sigma = pw(a2, {"e_s01", "e_s10"});
    ShrinkResult r = shrink(a2, eps, a2.vertex_id("q0"), sigma, sigma);
    REQUIRE(r.flank1.empty());
    REQUIRE(r.flank2.empty());
    REQUIRE(pump_witness_valid(a2, r.certificate));
  }
  SECTION("the dihedral example keeps short flanks") {
    GAutomaton a2 = make_a2();
    PathWord eps = PathWord::empty_at(a2.vertex_id("q0"));
    PathWord sigma = pw(a2, {"e_s01", "e_t1", "e_s10", "e_t0"});
    PathWord omega = pw(a2, {"e_t1", "e_s10"});
    ShrinkResult r = shrink(a2, eps, a2.vertex_id("q0"), sigma, omega);
    REQUIRE(r.flank1.size() < a2.num_vertices());
    REQUIRE(r.flank2.size() < a2.num_vertices());
    PathWord loop = path_concat(a2, path_concat(a2, r.flank1, omega), r.flank2);
    REQUIRE(in_M(a2, loop, eps, a2.vertex_id("q0")).verdict.yes());
    REQUIRE(pump_witness_valid(a2, r.certificate));
    REQUIRE(r.certificate.sigma == loop);
  }
  SECTION("a one-vertex automaton forces empty flanks") {
    GAutomaton a1 = make_a1();
    PathWord eps = PathWord::empty_at(a1.vertex_id("q"));
    PathWord sigma = pw(a1, {"e_a", "e_A", "e_A", "e_a"});
    PathWord omega = pw(a1, {"e_A", "e_a"});
    ShrinkResult r = shrink(a1, eps, a1.vertex_id("q"), sigma, omega);
    REQUIRE(r.flank1.empty());
    REQUIRE(r.flank2.empty());
    REQUIRE(in_M(a1, omega, eps, a1.vertex_id("q")).verdict.yes());
  }
  SECTION("omega must be contiguous in sigma") {
    GAutomaton a1 = make_a1();
    PathWord eps = PathWord::empty_at(a1.vertex_id("q"));
    REQUIRE_THROWS_AS(
        shrink(a1, eps, a1.vertex_id("q"), pw(a1, {"e_a", "e_A"}), pw(a1, {"e_A", "e_a"})),
        UsageError);
  }
}
