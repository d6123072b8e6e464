#pragma once

#include <cstddef>
#include <vector>

#include "bv/geometry.hpp"

namespace bv {

// A grid partition of [0,1]^d: per-axis strictly increasing breakpoints
// starting at 0, all strictly below 1. The successor of the last breakpoint
// on each axis is 1, so the half-open cells [y, y+) tile the cube.
//
// Breakpoints are stored canonically and compared by exact bit equality;
// they are never recomputed from cell indices.
class Ladder {
 public:
  static Ladder uniform(int dim, int cells_per_axis);
  static Ladder from_breakpoints(std::vector<std::vector<double>> axes);

  int dim() const { return static_cast<int>(axes_.size()); }
  const std::vector<double>& breakpoints(int axis) const {
    return axes_[static_cast<std::size_t>(axis)];
  }
  int cells(int axis) const {
    return static_cast<int>(axes_[static_cast<std::size_t>(axis)].size());
  }
  std::vector<int> cells_per_axis() const;
  std::size_t cell_count() const;

  // Breakpoints plus the terminal 1.0 (the successor of the last breakpoint).
  std::vector<double> nodes(int axis) const;
  std::vector<int> node_counts() const;

  // Coordinatewise successor of a grid point; every coordinate must be a
  // breakpoint of its axis (exact match), else invalid_argument.
  Point successor(const Point& y) const;

  // Splits every cell on every axis into `factor` equal parts, keeping the
  // original breakpoints.
  Ladder refined(int factor) const;

  bool operator==(const Ladder& other) const = default;

 private:
  std::vector<std::vector<double>> axes_;
};

// The ladder induced on the face through 1 spanned by the axes in `u`:
// points y^u : 1^{-u} with y from the parent ladder. The empty face is the
// single point (1,...,1).
class FaceLadder {
 public:
  FaceLadder(const Ladder& parent, AxisSet u);

  AxisSet axes() const { return axes_; }
  int ambient_dim() const { return axes_.dim(); }
  std::size_t point_count() const;

  // flat index (row-major over the face axes) -> ambient point
  Point point(std::size_t flat) const;
  std::vector<Point> points() const;
  Point successor(const Point& y) const;

 private:
  std::vector<std::vector<double>> face_breakpoints_;  // one list per axis in `axes_`
  AxisSet axes_;
};

FaceLadder face_ladder(const Ladder& parent, AxisSet u);

}  // namespace bv
