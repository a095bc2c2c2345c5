#pragma once

// Minimal non-negative solutions of linear Diophantine systems A.x = b,
// where selected rows may be congruences mod d. This is the feasibility
// engine behind every exact path decision.
//
// The core is the Contejean-Devie frontier search for homogeneous systems:
// grow candidate tuples coordinate by coordinate, only in directions whose
// column value has negative inner product with the current defect, prune
// anything dominating a known solution. Congruence rows are turned into
// exact rows with a +/- slack column pair; inhomogeneous systems are
// homogenized with an extra column carrying -b whose multiplicity is pinned
// to one.

#include <algorithm>
#include <set>
#include <vector>

#include "valence/bigint.hpp"
#include "valence/errors.hpp"
#include "valence/lattice.hpp"

namespace valence {

struct DiophantineSystem {
  IntMatrix a;              // m rows, k columns
  IntRow b;                 // m entries
  std::vector<Int> moduli;  // per row: 0 = exact equation, >= 2 = congruence mod that value

  std::size_t rows() const { return a.size(); }
  std::size_t cols() const { return a.empty() ? 0 : a[0].size(); }

  void check() const {
    for (const IntRow& r : a)
      if (r.size() != cols()) throw UsageError("ragged coefficient matrix");
    if (b.size() != rows()) throw UsageError("right-hand side length mismatch");
    if (!moduli.empty() && moduli.size() != rows()) throw UsageError("moduli length mismatch");
    for (const Int& m : moduli)
      if (m != 0 && m < 2) throw UsageError("congruence modulus must be 0 or >= 2");
  }
};

namespace detail {

inline bool dominates_some(const std::vector<IntRow>& minimal, const IntRow& x) {
  for (const IntRow& m : minimal) {
    bool ge = true;
    for (std::size_t i = 0; i < x.size() && ge; ++i) ge = x[i] >= m[i];
    if (ge) return true;
  }
  return false;
}

// Minimal nonzero solutions of M.y = 0 over naturals. `pin` marks columns
// whose multiplicity may not exceed one (the homogenizing column); the
// monotone-path completeness of the search keeps this sound.
inline std::vector<IntRow> cd_minimal_nonzero(const IntMatrix& m, const std::vector<bool>& pin,
                                              std::size_t node_guard) {
  const std::size_t k = m.empty() ? 0 : m[0].size();
  std::vector<IntRow> cols(k, IntRow(m.size(), Int(0)));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < k; ++j) cols[j][i] = m[i][j];

  std::vector<IntRow> minimal;
  std::set<IntRow> frontier;
  for (std::size_t j = 0; j < k; ++j) {
    IntRow e(k, Int(0));
    e[j] = 1;
    frontier.insert(std::move(e));
  }
  std::size_t nodes = 0;
  auto defect = [&](const IntRow& y) {
    IntRow d(m.size(), Int(0));
    for (std::size_t j = 0; j < k; ++j)
      if (y[j] != 0)
        for (std::size_t i = 0; i < m.size(); ++i) d[i] += y[j] * cols[j][i];
    return d;
  };
  while (!frontier.empty()) {
    std::vector<std::pair<IntRow, IntRow>> extend;  // (tuple, defect)
    for (const IntRow& y : frontier) {
      if (++nodes > node_guard) throw ResourceLimitError("diophantine frontier exceeded node guard");
      IntRow d = defect(y);
      bool solved = true;
      for (const Int& x : d) solved &= (x == 0);
      if (solved) {
        if (!dominates_some(minimal, y)) minimal.push_back(y);
      } else {
        extend.emplace_back(y, std::move(d));
      }
    }
    std::set<IntRow> next;
    for (const auto& [y, d] : extend) {
      for (std::size_t j = 0; j < k; ++j) {
        if (pin[j] && y[j] >= 1) continue;
        Int dot = 0;
        for (std::size_t i = 0; i < m.size(); ++i) dot += d[i] * cols[j][i];
        if (dot >= 0) continue;
        IntRow y2 = y;
        ++y2[j];
        if (!dominates_some(minimal, y2)) next.insert(std::move(y2));
      }
    }
    frontier = std::move(next);
  }
  std::sort(minimal.begin(), minimal.end());
  return minimal;
}

inline std::vector<IntRow> minimal_elements(std::vector<IntRow> xs) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<IntRow> out;
  for (const IntRow& x : xs) {
    bool dominated = false;
    for (const IntRow& y : xs) {
      if (&y == &x || y == x) continue;
      bool le = true;
      for (std::size_t i = 0; i < x.size() && le; ++i) le = y[i] <= x[i];
      if (le) {
        dominated = true;
        break;
      }
    }
    if (!dominated) out.push_back(x);
  }
  return out;
}

}  // namespace detail

// Componentwise-minimal solutions in N^k. For a homogeneous system this is
// the set of minimal nonzero solutions; otherwise the minimal elements of
// the full solution set. Output is sorted lexicographically.
inline std::vector<IntRow> min_nonneg_solutions(const DiophantineSystem& sys, std::size_t node_guard = 500000) {
  sys.check();
  const std::size_t k = sys.cols();
  const std::size_t m = sys.rows();

  bool homogeneous = true;
  for (const Int& x : sys.b) homogeneous &= (x == 0);

  // slack pair per congruence row, then optionally the homogenizing column
  IntMatrix ext(m);
  std::vector<bool> pin;
  for (std::size_t i = 0; i < m; ++i) ext[i] = sys.a[i];
  std::size_t ncols = k;
  if (!sys.moduli.empty()) {
    for (std::size_t i = 0; i < m; ++i) {
      if (sys.moduli[i] == 0) continue;
      for (std::size_t r = 0; r < m; ++r) {
        ext[r].push_back(r == i ? Int(-sys.moduli[i]) : Int(0));
        ext[r].push_back(r == i ? Int(sys.moduli[i]) : Int(0));
      }
      ncols += 2;
    }
  }
  if (!homogeneous) {
    for (std::size_t r = 0; r < m; ++r) ext[r].push_back(-sys.b[r]);
    ++ncols;
  }
  pin.assign(ncols, false);
  if (!homogeneous) pin[ncols - 1] = true;

  std::vector<IntRow> raw = detail::cd_minimal_nonzero(ext, pin, node_guard);

  std::vector<IntRow> projected;
  for (const IntRow& y : raw) {
    if (!homogeneous && y[ncols - 1] != 1) continue;
    IntRow x(y.begin(), y.begin() + k);
    if (homogeneous) {
      bool zero = true;
      for (const Int& c : x) zero &= (c == 0);
      if (zero) continue;
    }
    projected.push_back(std::move(x));
  }
  return detail::minimal_elements(std::move(projected));
}

inline std::vector<IntRow> min_nonneg_solutions(const IntMatrix& a, const IntRow& b,
                                                const std::vector<Int>& moduli = {},
                                                std::size_t node_guard = 500000) {
  return min_nonneg_solutions(DiophantineSystem{a, b, moduli}, node_guard);
}

// Feasibility of A.x = b over naturals (x = 0 allowed).
inline bool nonneg_solvable(const DiophantineSystem& sys, std::size_t node_guard = 500000) {
  bool homogeneous = true;
  for (const Int& x : sys.b) homogeneous &= (x == 0);
  if (homogeneous) return true;
  return !min_nonneg_solutions(sys, node_guard).empty();
}

}  // namespace valence
