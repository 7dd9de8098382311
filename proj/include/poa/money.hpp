#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace poa {

// Monetary quantities are IEEE doubles; comparisons take an explicit tolerance.
using Money = double;

inline constexpr double kMoneyTol = 1e-9;

inline bool approx_eq(double a, double b, double tol = kMoneyTol) {
  return std::abs(a - b) <= tol;
}

inline bool approx_le(double a, double b, double tol = kMoneyTol) {
  return a <= b + tol;
}

inline bool approx_ge(double a, double b, double tol = kMoneyTol) {
  return a >= b - tol;
}

// Relative-or-absolute closeness for cross-checking computed values.
inline bool close_rel(double a, double b, double rel, double abs_floor = 0.0) {
  double scale = std::max({std::abs(a), std::abs(b), 1.0});
  return std::abs(a - b) <= std::max(rel * scale, abs_floor);
}

}  // namespace poa
