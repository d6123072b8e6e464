#pragma once

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "bv/geometry.hpp"

namespace bv {

enum class FamilyKind {
  anchored_boxes,  // axis-parallel boxes with 0 as a vertex, per-axis closedness
  convex_sets,     // half-space polytopes and balls (d <= 3)
};

struct SetFamily {
  FamilyKind kind = FamilyKind::anchored_boxes;
  int dim = 0;

  // Both supported families are closed under pairwise intersection within
  // their represented class.
  bool intersection_closed() const { return true; }
  bool operator==(const SetFamily& other) const = default;
};

// n . x <= offset, or strict when `strict` is set.
struct HalfSpace {
  std::vector<double> normal;
  double offset = 0.0;
  bool strict = false;

  bool contains(const Point& x) const;
  bool operator==(const HalfSpace& other) const = default;
};

// Closed Euclidean ball (a disc in d = 2).
struct Ball {
  std::vector<double> center;
  double radius = 0.0;

  bool contains(const Point& x) const;
  bool operator==(const Ball& other) const = default;
};

inline constexpr int kMaxHalfSpaces = 16;

// A convex subset of the cube: an intersection of at most kMaxHalfSpaces
// half-spaces and at most one ball, plus canonical empty/cube markers.
// Intersections with a second ball leave the represented class and throw.
class ConvexSet {
 public:
  static ConvexSet cube(int dim);
  static ConvexSet empty_set(int dim);
  static ConvexSet polytope(int dim, std::vector<HalfSpace> halfspaces);
  static ConvexSet ball(int dim, Ball b);
  static ConvexSet ball_polytope(int dim, Ball b, std::vector<HalfSpace> halfspaces);

  int dim() const { return dim_; }
  bool contains(const Point& x) const;
  bool is_cube() const { return !empty_ && halfspaces_.empty() && !ball_.has_value(); }
  bool is_empty_marker() const { return empty_; }
  const std::vector<HalfSpace>& halfspaces() const { return halfspaces_; }
  const std::optional<Ball>& ball_part() const { return ball_; }

  ConvexSet intersect(const ConvexSet& other) const;
  bool operator==(const ConvexSet& other) const = default;

 private:
  int dim_ = 0;
  bool empty_ = false;
  std::vector<HalfSpace> halfspaces_;
  std::optional<Ball> ball_;
};

// A family member, or the complement of one (complements are admitted by
// the complexity accounting; they cannot participate in products).
struct SetMember {
  std::variant<BoxV, ConvexSet> shape;
  bool complemented = false;

  int dim() const;
  bool contains(const Point& x) const;
  // Canonical recognition after unwrapping complements.
  bool is_empty() const;
  bool is_cube() const;
  bool operator==(const SetMember& other) const = default;

  static SetMember box(BoxV b) { return {std::move(b), false}; }
  static SetMember convex(ConvexSet c) { return {std::move(c), false}; }
  static SetMember complement_of(SetMember m);
};

struct Term {
  double alpha = 0.0;
  SetMember set;
};

// f = sum of alpha_i * indicator(A_i) over a fixed family. The stored
// representation is not unique and is kept as given.
class SimpleFunction {
 public:
  SimpleFunction(SetFamily family, std::vector<Term> terms);

  const SetFamily& family() const { return family_; }
  std::span<const Term> terms() const { return terms_; }
  int dim() const { return family_.dim; }

  double eval(const Point& x) const;

 private:
  SetFamily family_;
  std::vector<Term> terms_;
};

SimpleFunction add(const SimpleFunction& s, const SimpleFunction& t);
SimpleFunction scale(double c, const SimpleFunction& s);
// Cross-product of the term lists with sets A_i intersect B_j. Requires an
// intersection-closed family; throws UnsupportedOperationError when an
// intersection leaves the represented class or a term is complemented.
SimpleFunction multiply(const SimpleFunction& s, const SimpleFunction& t);

// Upper bound on the minimal signed-indicator representation length:
// exactly 0 for the empty set and the cube, else 1 (any other direct member
// or complement is itself a length-1 representation, and 1 is forced).
int complexity_upper(const SetMember& m);

// Upper bound for a set given as an algebraic sum of members (the signed
// indicator sum of the list equals the set's indicator): the stored
// representation length, sharpened to the member bound for single entries.
int complexity_upper(std::span<const SetMember> algebraic_sum);

// Sums coefficients of structurally identical sets; the only always-safe
// representation improvement.
SimpleFunction merge_duplicates(const SimpleFunction& s);

// Per-term complexity bounds of the duplicate-merged representation and
// their coefficient-weighted total.
struct ComplexityAccount {
  std::vector<int> term_bounds;
  double vs_upper = 0.0;
};
ComplexityAccount complexity_account(const SimpleFunction& s);

// sum |alpha_i| * complexity_upper(A_i) over the duplicate-merged stored
// representation. An upper bound for the representation-infimum.
double vs_upper(const SimpleFunction& s);

// Pointwise extrema. Exact for anchored-box families (piecewise-constant on
// the arrangement grid of the stored boxes); sampled on a low-discrepancy
// set for convex families.
struct Extrema {
  double min = 0.0;
  double max = 0.0;
  bool exact = false;
};
Extrema extrema(const SimpleFunction& s);
double sup_abs(const SimpleFunction& s);
double inf_abs(const SimpleFunction& s);

// Batch evaluation of s at many points; uses the box-indicator kernel for
// anchored-box terms.
void eval_batch(const SimpleFunction& s, std::span<const Point> points, std::span<double> out);

}  // namespace bv
