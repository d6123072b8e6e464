#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bv/grid_function.hpp"

namespace bv {

struct VariationTraceEntry {
  std::vector<int> cells_per_axis;
  double hk_total = 0.0;
};

// Ladder-level variation summary. hk_total is the sum over nonempty axis
// subsets u of the Vitali variation of f restricted to the face through 1
// spanned by u. Every value is a lower bound for the supremum over all
// ladders; `converged` reports whether a refinement loop met its tolerance.
struct VariationReport {
  int dimension = 0;
  std::vector<int> cells_per_axis;
  double vitali = 0.0;
  std::vector<std::pair<AxisSet, double>> faces;  // ascending mask order
  double hk_total = 0.0;
  bool converged = false;
  std::vector<VariationTraceEntry> trace;
};

// Sum of |alternating corner sum| over all cells of the ladder.
double vitali_on_ladder(const GridFunction& f, const Ladder& ladder);

VariationReport hk_on_ladder(const GridFunction& f, const Ladder& ladder);

// Refines by factor 2 until successive hk_total values differ by less than
// tol or max_refine refinements have been done. Non-convergence is reported,
// not thrown; the result is always a lower bound.
VariationReport hk_refined(const GridFunction& f, const Ladder& initial, double tol,
                           int max_refine);

struct CmViolation {
  AxisSet face;       // axes of the sub-box that varies
  Point box_lower;    // pinned axes carry the fixed grid coordinate
  Point box_upper;
  double delta = 0.0;
  std::string describe() const;
};

struct CmResult {
  bool completely_monotone = false;
  std::optional<CmViolation> violation;
  explicit operator bool() const { return completely_monotone; }
};

// Grid-level complete monotonicity: the alternating sum over every single
// cell of every face of every dimension must be >= -tol, with the pinned
// coordinates ranging over all grid nodes (including 1). Checking cells
// suffices: the sum over a grid-aligned box telescopes over its cells, so
// nonnegativity on cells implies it on every grid box.
//
// Default tolerance is 1e-12 * (1 + max|f| on the grid), absorbing the
// round-off of the 2^d-term sums. The first violation in a fixed scan order
// (face mask ascending, then row-major position) is returned as witness.
CmResult is_completely_monotone(const GridFunction& f, const Ladder& ladder);
CmResult is_completely_monotone(const TableData& table);
CmResult is_completely_monotone(const TableData& table, double tol);

// f split as plus - minus with both parts completely monotone on the ladder
// and the difference matching f at every grid node. Anchored so that
// plus(0) = f(0) and minus(0) = 0.
struct MonotoneDecomposition {
  GridFunction plus;
  GridFunction minus;
  Ladder ladder;
};

// Grid-level Jordan decomposition: the mixed increments of f anchored at 0
// are split by sign and re-accumulated. Both outputs are re-checked with
// is_completely_monotone; a check failure throws (it would be a bug, the
// construction guarantees it up to round-off).
MonotoneDecomposition decompose_monotone(const GridFunction& f, const Ladder& ladder);

}  // namespace bv
