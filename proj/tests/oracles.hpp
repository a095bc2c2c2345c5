#pragma once

// Independent brute-force oracles. These stay definition-driven and never
// call into the decision engines they are checking.

#include <algorithm>
#include <string>
#include <vector>

#include <valence/valence.hpp>

namespace oracles {

using namespace valence;

// Every path starting at `from` with at most max_len edges, in generation
// (length-lexicographic prefix) order.
template <class Fn>
void for_each_path(const GAutomaton& a, VertexId from, std::size_t max_len, Fn&& fn) {
  std::vector<EdgeId> stack;
  auto dfs = [&](auto&& self, VertexId v) -> void {
    fn(PathWord{stack}, v);
    if (stack.size() == max_len) return;
    for (EdgeId e : a.out_edges(v)) {
      stack.push_back(e);
      self(self, a.edge(e).dst);
      stack.pop_back();
    }
  };
  dfs(dfs, from);
}

inline std::vector<PathWord> accepting_paths_up_to(const GAutomaton& a, std::size_t max_len) {
  std::vector<PathWord> out;
  for_each_path(a, a.initial(), max_len, [&](PathWord p, VertexId at) {
    if (at != a.terminal()) return;
    if (!path_weight(a, p).is_zero()) return;
    if (p.empty()) p.anchor = a.initial();
    out.push_back(std::move(p));
  });
  return out;
}

// Minimal elements of the accepting paths up to max_len under the scattered
// subword order. Length-sorted fold: any dominator of x is itself dominated
// by a kept minimal path of smaller length.
inline std::vector<PathWord> brute_minimal_accepting(const GAutomaton& a, std::size_t max_len) {
  std::vector<PathWord> acc = accepting_paths_up_to(a, max_len);
  std::sort(acc.begin(), acc.end());
  std::vector<PathWord> kept;
  for (const PathWord& p : acc) {
    bool dominated = false;
    for (const PathWord& m : kept)
      if (is_scattered_subword(m, p)) {
        dominated = true;
        break;
      }
    if (!dominated) kept.push_back(p);
  }
  return kept;
}

// Bounded membership certificate: some accepting path of length <= max_len
// spells u. One-sided (No means "not within the bound").
inline bool brute_accepts_within(const GAutomaton& a, const std::string& u, std::size_t max_len) {
  bool found = false;
  for_each_path(a, a.initial(), max_len, [&](const PathWord& p, VertexId at) {
    if (found || at != a.terminal()) return;
    found = path_weight(a, p).is_zero() && path_sigma(a, p) == u;
  });
  return found;
}

// Box search for minimal solutions of A.x = b (congruence rows allowed):
// exact on solutions whose coordinates stay within the box.
inline std::vector<IntRow> box_minimal_solutions(const IntMatrix& mat, const IntRow& b,
                                                 const std::vector<Int>& moduli, long box) {
  const std::size_t k = mat.empty() ? 0 : mat[0].size();
  bool homogeneous = true;
  for (const Int& x : b) homogeneous &= (x == 0);
  std::vector<IntRow> sols;
  IntRow x(k, Int(0));
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == k) {
      bool zero = true;
      for (const Int& c : x) zero &= (c == 0);
      if (homogeneous && zero) return;
      for (std::size_t r = 0; r < mat.size(); ++r) {
        Int lhs = 0;
        for (std::size_t j = 0; j < k; ++j) lhs += mat[r][j] * x[j];
        Int diff = lhs - b[r];
        if (!moduli.empty() && moduli[r] != 0) {
          if (floor_mod(diff, moduli[r]) != 0) return;
        } else if (diff != 0) {
          return;
        }
      }
      sols.push_back(x);
      return;
    }
    for (long v = 0; v <= box; ++v) {
      x[i] = v;
      self(self, i + 1);
    }
    x[i] = 0;
  };
  rec(rec, 0);
  std::vector<IntRow> minimal;
  for (const IntRow& s : sols) {
    bool dominated = false;
    for (const IntRow& t : sols) {
      if (t == s) continue;
      bool le = true;
      for (std::size_t i = 0; i < k && le; ++i) le = t[i] <= s[i];
      if (le) {
        dominated = true;
        break;
      }
    }
    if (!dominated) minimal.push_back(s);
  }
  std::sort(minimal.begin(), minimal.end());
  return minimal;
}

// Membership in the subgroup generated by `gens` by exhaustive coefficient
// search over [-range, range].
inline bool brute_lattice_contains(const AbelianSpec& spec, const std::vector<GroupVector>& gens,
                                   const GroupVector& v, long range) {
  std::vector<long> c(gens.size(), -range);
  if (gens.empty()) return v.is_zero();
  while (true) {
    GroupVector sum = GroupVector::zero(spec);
    for (std::size_t i = 0; i < gens.size(); ++i) sum = sum + gens[i] * Int(c[i]);
    if (sum == v) return true;
    std::size_t i = 0;
    while (i < c.size() && c[i] == range) c[i++] = -range;
    if (i == c.size()) return false;
    ++c[i];
  }
}

}  // namespace oracles
