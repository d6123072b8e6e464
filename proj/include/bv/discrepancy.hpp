#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bv/geometry.hpp"

namespace bv {

struct PointSet {
  std::vector<Point> points;
  std::string label;
  std::optional<std::uint64_t> seed;

  int dim() const { return points.empty() ? 0 : points.front().dim(); }
  int size() const { return static_cast<int>(points.size()); }
};

// Exact star discrepancy: the supremum over anchored half-open boxes [0,t)
// of |count/N - volume|. Enumerates the critical corners (per-axis point
// coordinates plus 1) and evaluates both the open count and the limit-from-
// above count at each corner; on axes where the corner is 1 the closure
// limit does not exist inside the cube, so the count stays strict there.
//
// Budget (the search is N^d-sized): N <= 4096 for d=1, 256 for d=2, 64 for
// d=3; beyond that a ResourceLimitError suggests the grid bracket.
double star_discrepancy_exact(const PointSet& ps);

struct DiscrepancyBracket {
  double lower = 0.0;  // max local discrepancy over the uniform grid corners
  double upper = 0.0;  // lower + d/m
};

// Certified bracket from scanning the uniform (m+1)^d corner grid.
DiscrepancyBracket star_discrepancy_grid_bound(const PointSet& ps, int m);

// Grid resolution keeping the (m+1)^d corner scan desk-scale per dimension.
int default_grid_bound_resolution(int dim);

// Throws ResourceLimitError when the (m+1)^d * N corner scan would exceed
// the desk-scale budget; used before automatic grid-bound fallbacks.
void check_grid_bound_budget(const PointSet& ps, int m);

// First d primes as bases, radical-inverse digit reversal, indices 1..n.
PointSet generate_halton(int n, int d);
// Points {i*g/n mod 1}, i = 0..n-1.
PointSet generate_rank1_lattice(int n, int d, std::span<const std::uint64_t> g);
// Counter-mode splitmix64; one 64-bit seed pins every coordinate bit.
PointSet generate_uniform_random(int n, int d, std::uint64_t seed);
// {(2i-1)/(2n)}, d = 1.
PointSet generate_centered_regular(int n);

// "halton:n=64,d=2" | "lattice:n=64,d=2,g=1,7" | "random:n=100,d=2,seed=7"
// | "centered:n=4,d=1" | a CSV path.
PointSet parse_pointset_spec(const std::string& spec);

// One point per line, comma-separated coordinates; optional leading
// "# label=..., seed=..." header.
PointSet read_pointset_csv(const std::string& path);
void write_pointset_csv(const PointSet& ps, const std::string& path);

}  // namespace bv
