#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

#include "valence/errors.hpp"

namespace valence {

// Exact integer arithmetic throughout: Hermite elimination and Diophantine
// search can blow past any fixed width.
using Int = boost::multiprecision::cpp_int;

inline Int abs_int(const Int& x) { return x < 0 ? Int(-x) : x; }

// Floor division/remainder with 0 <= mod(a, m) < m for m > 0.
inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if ((a % b) != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Int floor_mod(const Int& a, const Int& b) { return a - floor_div(a, b) * b; }

inline std::int64_t to_int64(const Int& x) {
  if (x < std::numeric_limits<std::int64_t>::min() || x > std::numeric_limits<std::int64_t>::max())
    throw UsageError("integer out of int64 range: " + x.str());
  return static_cast<std::int64_t>(x);
}

}  // namespace valence
