#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <span>
#include <string>

namespace bv {

// Alternating sums over box corners cost 2^d evaluations and the exact
// discrepancy search costs N^d; everything here is desk-scale by design.
inline constexpr int kMaxDim = 8;

// A point of [0,1]^d, d <= kMaxDim. Coordinates are validated on
// construction; the mutable accessor is for builders that stay in range.
class Point {
 public:
  Point() = default;
  explicit Point(std::span<const double> coords);
  Point(std::initializer_list<double> coords)
      : Point(std::span<const double>(coords.begin(), coords.size())) {}

  static Point zeros(int dim);
  static Point ones(int dim);
  static Point filled(int dim, double value);

  int dim() const { return dim_; }
  double operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  double& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }
  std::span<const double> coords() const { return {c_.data(), static_cast<std::size_t>(dim_)}; }

  // Coordinatewise a_i <= b_i.
  friend bool leq(const Point& a, const Point& b);
  bool operator==(const Point& other) const;

  std::string to_string() const;

 private:
  std::array<double, kMaxDim> c_{};
  int dim_ = 0;
};

// A subset of the axes {1,...,d}, stored as a bitmask with bit i-1 for
// axis i. The complement is always taken relative to the full axis set.
class AxisSet {
 public:
  AxisSet() = default;
  AxisSet(std::uint32_t mask, int dim);

  static AxisSet none(int dim) { return AxisSet(0, dim); }
  static AxisSet all(int dim) { return AxisSet((1u << dim) - 1u, dim); }
  static AxisSet single(int axis, int dim) { return AxisSet(1u << axis, dim); }

  int dim() const { return dim_; }
  std::uint32_t mask() const { return mask_; }
  bool contains(int axis) const { return (mask_ >> axis) & 1u; }
  int count() const { return std::popcount(mask_); }
  bool empty() const { return mask_ == 0; }
  bool full() const { return mask_ == (1u << dim_) - 1u; }

  AxisSet complement() const { return AxisSet(~mask_ & ((1u << dim_) - 1u), dim_); }
  AxisSet union_with(const AxisSet& other) const;
  AxisSet intersect(const AxisSet& other) const;

  bool operator==(const AxisSet& other) const = default;

  // "{1,3}" with 1-based axis labels; "{}" for the empty set.
  std::string to_string() const;

 private:
  std::uint32_t mask_ = 0;
  int dim_ = 0;
};

// The point taking coordinates from `a` on the axes in `u` and from `b`
// elsewhere.
Point splice(const Point& a, const Point& b, const AxisSet& u);

// Axis-parallel box [a,b]^v: closed at b on the axes in v, half-open
// elsewhere. Degenerate a_i == b_i with i outside v makes the box empty.
struct BoxV {
  Point a;
  Point b;
  AxisSet closed_at_b;

  BoxV(Point lower, Point upper, AxisSet v);
  static BoxV anchored(Point upper, AxisSet v);

  int dim() const { return a.dim(); }
  bool contains(const Point& x) const;
  bool empty() const;
  bool operator==(const BoxV& other) const = default;
};

}  // namespace bv
