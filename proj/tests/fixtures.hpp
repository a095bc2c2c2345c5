#pragma once

// Shared fixtures: the word-problem automata used across the suite, the
// planted non-word-problem automaton, and seeded random generators.

#include <random>
#include <string>
#include <vector>

#include <valence/valence.hpp>

namespace fixtures {

using namespace valence;

// WP(Z): one vertex, +1/-1 loops.
inline GAutomaton make_a1() {
  AbelianSpec spec{1, {}};
  GAutomaton a(spec, {'a', 'A'});
  VertexId q = a.add_vertex("q");
  a.add_edge("e_a", q, q, GroupVector(spec, {Int(1)}), "a");
  a.add_edge("e_A", q, q, GroupVector(spec, {Int(-1)}), "A");
  a.set_initial(q);
  a.set_terminal(q);
  return a;
}

inline ChoiceOfGenerators make_rho_z() {
  AbelianSpec h{1, {}};
  TargetGroup g{TargetGroupSpec{h}};
  return ChoiceOfGenerators(g, {{'a', GroupVector(h, {Int(1)})}, {'A', GroupVector(h, {Int(-1)})}});
}

// The infinite dihedral group as Z x| C2.
inline FiniteGroupTable c2_table() {
  FiniteGroupTable f;
  f.names = {"1", "s"};
  f.table = {{0, 1}, {1, 0}};
  f.identity = 0;
  return f;
}

inline VirtuallyAbelianSpec dinf_spec() {
  VirtuallyAbelianSpec v;
  v.rank = 1;
  v.point_group = c2_table();
  v.action = {{{Int(1)}}, {{Int(-1)}}};
  return v;
}

inline TargetGroup dinf_group() { return TargetGroup{TargetGroupSpec{dinf_spec()}}; }

inline ChoiceOfGenerators make_rho_dinf() {
  TargetGroup g = dinf_group();
  return ChoiceOfGenerators(g, {{'t', VaElement{{Int(1)}, 0}},
                                {'T', VaElement{{Int(-1)}, 0}},
                                {'s', VaElement{{Int(0)}, 1}}});
}

// WP(Dinf): states track the point part, register tracks the twisted sum.
inline GAutomaton make_a2() {
  AbelianSpec spec{1, {}};
  GAutomaton a(spec, {'t', 'T', 's'});
  VertexId q0 = a.add_vertex("q0");
  VertexId q1 = a.add_vertex("q1");
  a.add_edge("e_t0", q0, q0, GroupVector(spec, {Int(1)}), "t");
  a.add_edge("e_T0", q0, q0, GroupVector(spec, {Int(-1)}), "T");
  a.add_edge("e_t1", q1, q1, GroupVector(spec, {Int(-1)}), "t");
  a.add_edge("e_T1", q1, q1, GroupVector(spec, {Int(1)}), "T");
  a.add_edge("e_s01", q0, q1, GroupVector(spec, {Int(0)}), "s");
  a.add_edge("e_s10", q1, q0, GroupVector(spec, {Int(0)}), "s");
  a.set_initial(q0);
  a.set_terminal(q0);
  return a;
}

// WP(trivial group): one vertex, no edges.
inline GAutomaton make_a3() {
  AbelianSpec spec{0, {}};
  GAutomaton a(spec, {});
  VertexId q = a.add_vertex("q");
  a.set_initial(q);
  a.set_terminal(q);
  return a;
}

inline ChoiceOfGenerators make_rho_trivial() {
  AbelianSpec h{0, {}};
  return ChoiceOfGenerators(TargetGroup{TargetGroupSpec{h}}, {});
}

// WP(Z) with a separate initial vertex and an epsilon lead-in edge.
inline GAutomaton make_a4() {
  AbelianSpec spec{1, {}};
  GAutomaton a(spec, {'a', 'A'});
  VertexId p = a.add_vertex("p");
  VertexId r = a.add_vertex("r");
  a.add_edge("f1", p, r, GroupVector(spec, {Int(0)}), "");
  a.add_edge("e_a", r, r, GroupVector(spec, {Int(1)}), "a");
  a.add_edge("e_A", r, r, GroupVector(spec, {Int(-1)}), "A");
  a.set_initial(p);
  a.set_terminal(r);
  return a;
}

// Accepts only the empty word: a single positive loop.
inline GAutomaton make_a5() {
  AbelianSpec spec{1, {}};
  GAutomaton a(spec, {'a'});
  VertexId q = a.add_vertex("q");
  a.add_edge("e_a", q, q, GroupVector(spec, {Int(1)}), "a");
  a.set_initial(q);
  a.set_terminal(q);
  return a;
}

// Not a word problem: the register weighs b/B double, so e.g. "aaB" is
// accepted although rho("aaB") = +1. Loops e_a e_a and e_b share register
// value +2 but map to 2 and 1.
inline GAutomaton make_planted() {
  AbelianSpec spec{1, {}};
  GAutomaton a(spec, {'a', 'A', 'b', 'B'});
  VertexId q = a.add_vertex("q");
  a.add_edge("e_a", q, q, GroupVector(spec, {Int(1)}), "a");
  a.add_edge("e_A", q, q, GroupVector(spec, {Int(-1)}), "A");
  a.add_edge("e_b", q, q, GroupVector(spec, {Int(2)}), "b");
  a.add_edge("e_B", q, q, GroupVector(spec, {Int(-2)}), "B");
  a.set_initial(q);
  a.set_terminal(q);
  return a;
}

inline ChoiceOfGenerators make_rho_planted() {
  AbelianSpec h{1, {}};
  TargetGroup g{TargetGroupSpec{h}};
  return ChoiceOfGenerators(g, {{'a', GroupVector(h, {Int(1)})},
                                {'A', GroupVector(h, {Int(-1)})},
                                {'b', GroupVector(h, {Int(1)})},
                                {'B', GroupVector(h, {Int(-1)})}});
}

// All words over the alphabet up to the given length, shortest first, then
// lexicographic.
inline std::vector<std::string> all_words(const std::vector<char>& alphabet, std::size_t max_len) {
  std::vector<std::string> out{""};
  std::vector<std::string> level{""};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<std::string> next;
    for (const std::string& w : level)
      for (char c : alphabet) {
        next.push_back(w + c);
        out.push_back(next.back());
      }
    level = std::move(next);
  }
  return out;
}

struct RandomParams {
  std::size_t max_vertices = 4;
  std::size_t max_edges = 8;
  std::size_t max_rank = 2;
  long label_bound = 2;
  std::vector<char> letters = {'a', 'b'};
};

inline GAutomaton random_automaton(std::mt19937_64& rng, const RandomParams& prm = {}) {
  std::size_t rank = rng() % (prm.max_rank + 1);
  AbelianSpec spec{rank, {}};
  GAutomaton a(spec, prm.letters);
  std::size_t nv = 1 + rng() % prm.max_vertices;
  for (std::size_t v = 0; v < nv; ++v) a.add_vertex("v" + std::to_string(v));
  std::size_t ne = rng() % (prm.max_edges + 1);
  for (std::size_t e = 0; e < ne; ++e) {
    std::vector<Int> g;
    for (std::size_t i = 0; i < rank; ++i)
      g.push_back(Int(static_cast<long>(rng() % (2 * prm.label_bound + 1)) - prm.label_bound));
    std::string sigma;
    if (rng() % 3 != 0) sigma = std::string(1, prm.letters[rng() % prm.letters.size()]);
    a.add_edge("e" + std::to_string(e), rng() % nv, rng() % nv, GroupVector(spec, std::move(g)), sigma);
  }
  a.set_initial(rng() % nv);
  a.set_terminal(rng() % nv);
  return a;
}

}  // namespace fixtures
