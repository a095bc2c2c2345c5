#pragma once

// Finitely generated abelian groups Z^r + Z/d_1 + ... + Z/d_k, written
// additively. These are the register groups: coordinates on the free part
// are arbitrary-precision integers, torsion coordinates are reduced
// residues in [0, d_i).

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include "valence/bigint.hpp"
#include "valence/errors.hpp"

namespace valence {

struct AbelianSpec {
  std::size_t free_rank = 0;
  std::vector<Int> torsion_moduli;  // each >= 2

  std::size_t dim() const { return free_rank + torsion_moduli.size(); }

  void check() const {
    for (const Int& d : torsion_moduli)
      if (d < 2) throw UsageError("torsion modulus must be >= 2, got " + d.str());
  }

  friend bool operator==(const AbelianSpec&, const AbelianSpec&) = default;
};

class GroupVector {
 public:
  GroupVector() = default;

  GroupVector(AbelianSpec spec, std::vector<Int> coords) : spec_(std::move(spec)), coords_(std::move(coords)) {
    if (coords_.size() != spec_.dim())
      throw UsageError("group vector has " + std::to_string(coords_.size()) + " coordinates, expected " +
                       std::to_string(spec_.dim()));
    reduce();
  }

  static GroupVector zero(const AbelianSpec& spec) {
    return GroupVector(spec, std::vector<Int>(spec.dim(), Int(0)));
  }

  const AbelianSpec& spec() const { return spec_; }
  const std::vector<Int>& coords() const { return coords_; }
  const Int& operator[](std::size_t i) const { return coords_[i]; }
  std::size_t dim() const { return coords_.size(); }

  bool is_zero() const {
    for (const Int& c : coords_)
      if (c != 0) return false;
    return true;
  }

  GroupVector operator+(const GroupVector& o) const {
    require_same_spec(o);
    std::vector<Int> c(coords_);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.coords_[i];
    return GroupVector(spec_, std::move(c));
  }

  GroupVector operator-(const GroupVector& o) const {
    require_same_spec(o);
    std::vector<Int> c(coords_);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] -= o.coords_[i];
    return GroupVector(spec_, std::move(c));
  }

  GroupVector operator-() const {
    std::vector<Int> c;
    c.reserve(coords_.size());
    for (const Int& x : coords_) c.push_back(-x);
    return GroupVector(spec_, std::move(c));
  }

  GroupVector operator*(const Int& k) const {
    std::vector<Int> c;
    c.reserve(coords_.size());
    for (const Int& x : coords_) c.push_back(x * k);
    return GroupVector(spec_, std::move(c));
  }

  // Max absolute value over free coordinates; the bounded engine's norm.
  Int free_norm() const {
    Int n = 0;
    for (std::size_t i = 0; i < spec_.free_rank; ++i) n = std::max(n, abs_int(coords_[i]));
    return n;
  }

  friend bool operator==(const GroupVector& a, const GroupVector& b) {
    return a.spec_ == b.spec_ && a.coords_ == b.coords_;
  }

  friend bool operator<(const GroupVector& a, const GroupVector& b) { return a.coords_ < b.coords_; }

  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      if (i) s += ",";
      s += coords_[i].str();
    }
    return s + ")";
  }

  void require_same_spec(const GroupVector& o) const {
    if (!(spec_ == o.spec_)) throw UsageError("mixed abelian specs");
  }

 private:
  void reduce() {
    for (std::size_t i = 0; i < spec_.torsion_moduli.size(); ++i) {
      Int& c = coords_[spec_.free_rank + i];
      c = floor_mod(c, spec_.torsion_moduli[i]);
    }
  }

  AbelianSpec spec_;
  std::vector<Int> coords_;
};

}  // namespace valence
