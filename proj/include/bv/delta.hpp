#pragma once

#include <bit>
#include <stdexcept>

#include "bv/geometry.hpp"
#include "bv/grid_function.hpp"

namespace bv {

// Alternating sum over the corners of [a,b] restricted to the axes in u:
//   sum over v subset of u of (-1)^|v| f(a^v : b^{-v}).
// Coordinates outside u are pinned at b. 2^|u| evaluations.
template <typename F>
double box_delta_on(const F& f, const Point& a, const Point& b, const AxisSet& u) {
  if (a.dim() != b.dim() || a.dim() != u.dim()) {
    throw std::invalid_argument("box_delta_on: dimension mismatch");
  }
  if (!leq(a, b)) throw std::invalid_argument("box_delta_on: requires a <= b");
  double acc = 0.0;
  const std::uint32_t umask = u.mask();
  // Enumerate subsets of u in descending mask order, ending at the empty set.
  std::uint32_t v = umask;
  while (true) {
    Point p = b;
    for (int i = 0; i < a.dim(); ++i) {
      if ((v >> i) & 1u) p[i] = a[i];
    }
    const double sign = (std::popcount(v) & 1) ? -1.0 : 1.0;
    acc += sign * f(p);
    if (v == 0) break;
    v = (v - 1) & umask;
  }
  return acc;
}

// Full-dimensional quasi-volume: alternating sum over all 2^d corners.
template <typename F>
double box_delta(const F& f, const Point& a, const Point& b) {
  return box_delta_on(f, a, b, AxisSet::all(a.dim()));
}

}  // namespace bv
