#pragma once

// Exact subgroup arithmetic for f.g. abelian groups, backed by row-style
// Hermite normal form over Z. Torsion is handled by adjoining the relation
// rows d_i * e_{r+i} to every generating set, so a subgroup of
// Z^r + Z/d_1 + ... is represented by a full integer lattice in Z^{r+k}.

#include <algorithm>
#include <optional>
#include <vector>

#include "valence/abelian.hpp"
#include "valence/bigint.hpp"
#include "valence/errors.hpp"

namespace valence {

using IntRow = std::vector<Int>;
using IntMatrix = std::vector<IntRow>;

struct HnfResult {
  IntMatrix h;                      // echelon rows, pivots > 0, entries above pivots reduced
  std::vector<std::size_t> pivots;  // pivot column per row of h
  IntMatrix transform;              // h[i] = transform[i] . input (only when tracked)
  IntMatrix kernel;                 // rows z with z . input = 0 (only when tracked)
};

// Row Hermite normal form. The result is the unique canonical basis of the
// row lattice of `rows`.
inline HnfResult row_hnf(IntMatrix rows, std::size_t ncols, bool track = false) {
  const std::size_t m = rows.size();
  IntMatrix u;
  if (track) {
    u.assign(m, IntRow(m, Int(0)));
    for (std::size_t i = 0; i < m; ++i) u[i][i] = 1;
  }
  std::size_t top = 0;
  std::vector<std::size_t> pivots;
  for (std::size_t col = 0; col < ncols && top < rows.size(); ++col) {
    // gcd-eliminate the column below `top`
    while (true) {
      std::size_t best = rows.size();
      for (std::size_t i = top; i < rows.size(); ++i)
        if (rows[i][col] != 0 && (best == rows.size() || abs_int(rows[i][col]) < abs_int(rows[best][col])))
          best = i;
      if (best == rows.size()) break;
      std::swap(rows[top], rows[best]);
      if (track) std::swap(u[top], u[best]);
      bool cleared = true;
      for (std::size_t i = top + 1; i < rows.size(); ++i) {
        if (rows[i][col] == 0) continue;
        Int q = floor_div(rows[i][col], rows[top][col]);
        for (std::size_t j = 0; j < ncols; ++j) rows[i][j] -= q * rows[top][j];
        if (track)
          for (std::size_t j = 0; j < m; ++j) u[i][j] -= q * u[top][j];
        if (rows[i][col] != 0) cleared = false;
      }
      if (cleared) break;
    }
    if (top < rows.size() && rows[top][col] != 0) {
      if (rows[top][col] < 0) {
        for (Int& x : rows[top]) x = -x;
        if (track)
          for (Int& x : u[top]) x = -x;
      }
      // reduce entries above the pivot into [0, pivot)
      for (std::size_t i = 0; i < top; ++i) {
        Int q = floor_div(rows[i][col], rows[top][col]);
        if (q == 0) continue;
        for (std::size_t j = 0; j < ncols; ++j) rows[i][j] -= q * rows[top][j];
        if (track)
          for (std::size_t j = 0; j < m; ++j) u[i][j] -= q * u[top][j];
      }
      pivots.push_back(col);
      ++top;
    }
  }
  HnfResult res;
  res.pivots = std::move(pivots);
  res.h.assign(rows.begin(), rows.begin() + top);
  if (track) {
    res.transform.assign(u.begin(), u.begin() + top);
    res.kernel.assign(u.begin() + top, u.end());
  }
  return res;
}

class LatticeSubgroup {
 public:
  LatticeSubgroup() = default;

  static LatticeSubgroup from_generators(const AbelianSpec& spec, const std::vector<GroupVector>& gens) {
    spec.check();
    IntMatrix rows;
    for (const GroupVector& g : gens) {
      if (!(g.spec() == spec)) throw UsageError("mixed abelian specs in generating set");
      rows.push_back(g.coords());
    }
    append_torsion_relations(spec, rows);
    LatticeSubgroup sub;
    sub.spec_ = spec;
    HnfResult hnf = row_hnf(std::move(rows), spec.dim());
    sub.basis_ = std::move(hnf.h);
    sub.pivots_ = std::move(hnf.pivots);
    return sub;
  }

  const AbelianSpec& spec() const { return spec_; }
  const IntMatrix& basis() const { return basis_; }
  const std::vector<std::size_t>& pivot_cols() const { return pivots_; }
  std::size_t rank() const { return basis_.size(); }

  bool contains(const GroupVector& v) const {
    if (!(v.spec() == spec_)) throw UsageError("spec mismatch in subgroup membership");
    IntRow r = v.coords();
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      const Int& x = r[pivots_[i]];
      if (x == 0) continue;
      if (x % basis_[i][pivots_[i]] != 0) return false;
      Int q = x / basis_[i][pivots_[i]];
      for (std::size_t j = 0; j < r.size(); ++j) r[j] -= q * basis_[i][j];
    }
    for (const Int& x : r)
      if (x != 0) return false;
    return true;
  }

  // Canonical representative of v's coset. Only a full transversal when the
  // index is finite, but canonical for any rank.
  GroupVector coset_rep(const GroupVector& v) const {
    IntRow r = v.coords();
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      Int q = floor_div(r[pivots_[i]], basis_[i][pivots_[i]]);
      if (q == 0) continue;
      for (std::size_t j = 0; j < r.size(); ++j) r[j] -= q * basis_[i][j];
    }
    return GroupVector(spec_, std::move(r));
  }

  // Index of the subgroup in the ambient group; nullopt = infinite.
  std::optional<Int> index_in_ambient() const {
    if (basis_.size() < spec_.dim()) return std::nullopt;
    Int idx = 1;
    for (std::size_t i = 0; i < basis_.size(); ++i) idx *= basis_[i][pivots_[i]];
    return idx;
  }

  friend bool operator==(const LatticeSubgroup& a, const LatticeSubgroup& b) {
    return a.spec_ == b.spec_ && a.basis_ == b.basis_;
  }

  static void append_torsion_relations(const AbelianSpec& spec, IntMatrix& rows) {
    for (std::size_t i = 0; i < spec.torsion_moduli.size(); ++i) {
      IntRow rel(spec.dim(), Int(0));
      rel[spec.free_rank + i] = spec.torsion_moduli[i];
      rows.push_back(std::move(rel));
    }
  }

 private:
  AbelianSpec spec_;
  IntMatrix basis_;
  std::vector<std::size_t> pivots_;
};

inline LatticeSubgroup canonical_basis(const AbelianSpec& spec, const std::vector<GroupVector>& gens) {
  return LatticeSubgroup::from_generators(spec, gens);
}

inline bool contains(const LatticeSubgroup& sub, const GroupVector& v) { return sub.contains(v); }

inline std::optional<Int> index_in_ambient(const LatticeSubgroup& sub) { return sub.index_in_ambient(); }

// Integer coefficients c with sum_i c_i * gens_i = v in the ambient group
// (torsion relations are adjoined internally). nullopt when v is not in the
// span. The coefficient vector has one entry per generator.
inline std::optional<std::vector<Int>> solve_in_span(const AbelianSpec& spec, const std::vector<GroupVector>& gens,
                                                     const GroupVector& v) {
  IntMatrix rows;
  for (const GroupVector& g : gens) {
    if (!(g.spec() == spec)) throw UsageError("mixed abelian specs in solve_in_span");
    rows.push_back(g.coords());
  }
  LatticeSubgroup::append_torsion_relations(spec, rows);
  HnfResult hnf = row_hnf(rows, spec.dim(), /*track=*/true);
  IntRow r = v.coords();
  IntRow y(hnf.h.size(), Int(0));
  for (std::size_t i = 0; i < hnf.h.size(); ++i) {
    const Int& x = r[hnf.pivots[i]];
    if (x == 0) continue;
    if (x % hnf.h[i][hnf.pivots[i]] != 0) return std::nullopt;
    y[i] = x / hnf.h[i][hnf.pivots[i]];
    for (std::size_t j = 0; j < r.size(); ++j) r[j] -= y[i] * hnf.h[i][j];
  }
  for (const Int& x : r)
    if (x != 0) return std::nullopt;
  std::vector<Int> coeff(gens.size(), Int(0));
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] == 0) continue;
    for (std::size_t j = 0; j < gens.size(); ++j) coeff[j] += y[i] * hnf.transform[i][j];
  }
  return coeff;
}

// Basis of the relation module {c : sum_i c_i * gens_i = 0}, one row per
// relation, entries aligned with gens.
inline IntMatrix relation_basis(const AbelianSpec& spec, const std::vector<GroupVector>& gens) {
  IntMatrix rows;
  for (const GroupVector& g : gens) rows.push_back(g.coords());
  std::size_t ngens = gens.size();
  LatticeSubgroup::append_torsion_relations(spec, rows);
  HnfResult hnf = row_hnf(rows, spec.dim(), /*track=*/true);
  IntMatrix rel;
  for (const IntRow& z : hnf.kernel) {
    IntRow r(z.begin(), z.begin() + ngens);
    bool nonzero = false;
    for (const Int& x : r) nonzero |= (x != 0);
    if (nonzero) rel.push_back(std::move(r));
  }
  return rel;
}

}  // namespace valence
