#pragma once

#include <vector>

#include "bv/grid_function.hpp"
#include "bv/simple_fn.hpp"
#include "bv/variation.hpp"

namespace bv {

struct ApproxOptions {
  // Uniform ladder used by the complete-monotonicity precondition check.
  int working_cells = 16;
  // Breakpoints are located by bisection to this width and then snapped to
  // the same grid before exact-value deduplication.
  double breakpoint_grid = 1e-12;
};

// Uniform simple-function approximation of a completely monotone f by
// anchored boxes, with sup error at most dim/n. Per axis, the restriction
// of f to the edge through 1 is partitioned in range steps of at most 1/n;
// range levels are pulled back to breakpoints (bisection handles jumps),
// interval midpoints supply the sample values, and the coefficients are
// alternating sums of f over the interleaved breakpoint/midpoint grids.
//
// Throws PreconditionError with a witness when the monotonicity check on
// the working ladder fails.
SimpleFunction approximate_monotone(const GridFunction& f, int n,
                                    const ApproxOptions& options = {});

// Exact anchored-box representation of the step extension of a tabulation:
// each nonzero anchored increment contributes its inclusion-exclusion
// expansion. The result evaluates identically to the table's step function.
SimpleFunction table_to_simple(const TableData& table);

struct DvarTraceEntry {
  int param = 0;       // n for the monotone route, cells per axis otherwise
  double vs = 0.0;     // representation bound at this stage
  double sup_gap = 0.0;  // certified (monotone route) or sampled sup distance
};

struct DvarResult {
  double value = 0.0;  // +infinity when no uniformly converging sequence was found
  bool finite = false;
  std::vector<DvarTraceEntry> trace;
};

// Upper bound on the family variation via an explicitly constructed
// uniformly approximating sequence:
//   - exact_rep given: the constant sequence, bound vs_upper(exact_rep);
//   - f completely monotone on the working ladder: approximate_monotone for
//     n = 1, 2, 4, ... up to n_max, bound = min of the vs_upper trace;
//   - otherwise: exact simple representations of tabulations on refining
//     uniform ladders; finite only if the sampled sup gap vanishes (the
//     function is itself a ladder step), else +infinity with the trace.
DvarResult dvar_upper(const GridFunction& f, const SetFamily& family, int n_max,
                      const std::optional<SimpleFunction>& exact_rep = std::nullopt,
                      const ApproxOptions& options = {});

// Chain comparison used as a property check for completely monotone f:
// moving coordinate j from a_j to x_j changes f by no more than it changes
// the restriction with coordinate i pinned at 1, which in turn is bounded
// by the change along the edge through 1.
bool increments_dominated(const GridFunction& f, const Point& x, const Point& a, int i, int j);

// Sup norm: exact maximum of |values| for tabulations (a step function
// attains node values only), low-discrepancy sampling otherwise.
double sup_norm(const GridFunction& f);

// ||f|| = sup + sigma * variation; sigma must be positive. The variation
// value is supplied by the caller together with its provenance.
double algebra_norm(double sup, double sigma, double variation);

}  // namespace bv
