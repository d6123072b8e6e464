#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace bv::kernels {

// The data-parallel inner loops (grid alternating sums, point-in-box
// counting, box-indicator accumulation) have scalar reference kernels and
// AVX2 variants selected at runtime. Both variants perform the identical
// floating-point operation sequence per output element, so results are
// bit-identical; the equivalence suite asserts this on random inputs.

enum class Backend { scalar, avx2 };

Backend active_backend();
bool backend_available(Backend b);
// Throws std::invalid_argument if the CPU lacks the requested backend.
void set_backend(Backend b);
// Honors the BVKIT_SIMD environment variable ("scalar"/"avx2"), else picks
// the best available. Called lazily by active_backend().
void autodetect_backend();
std::string backend_name(Backend b);

// Structure-of-arrays point storage for the counting kernels.
struct PointsSoA {
  int dim = 0;
  std::int64_t count = 0;
  std::vector<std::vector<double>> axis;  // axis[i][j] = coordinate i of point j

  const double* axis_data(int i) const { return axis[static_cast<std::size_t>(i)].data(); }
};

// Per-cell alternating corner sums of a tabulated grid. `values` is
// row-major over the node grid (last axis fastest), node_counts[i] >= 2.
// out has one entry per cell (node_counts[i]-1 per axis, same ordering):
//   out[c] = sum over corner subsets u of (-1)^|u| * value(upper corner of c
//            lowered on the axes in u).
void cell_deltas(std::span<const double> values, std::span<const int> node_counts,
                 std::span<double> out);

struct BoxCounts {
  std::int64_t open = 0;    // strictly below the corner on every axis
  std::int64_t closed = 0;  // per-axis <= where closed_allowed, else <
};

// Counts points of the anchored box with the given upper corner. The
// closed count uses <= only on axes where closed_allowed[i] is true (the
// caller disables it on axes where the corner is 1, where no box extends
// further).
BoxCounts count_in_anchored_box(const PointsSoA& pts, std::span<const double> corner,
                                std::span<const bool> closed_allowed);

// acc[j] += alpha for every point j inside [0,b] with per-axis closedness
// given by closed_mask (bit i set -> x_i <= b_i, else x_i < b_i).
// Lanes outside the box are left untouched (no +0.0), keeping scalar and
// SIMD results bit-identical.
void accumulate_box_indicator(const PointsSoA& pts, std::span<const double> b,
                              std::uint32_t closed_mask, double alpha, std::span<double> acc);

namespace detail {
void cell_deltas_scalar(std::span<const double> values, std::span<const int> node_counts,
                        std::span<double> out);
BoxCounts count_in_anchored_box_scalar(const PointsSoA& pts, std::span<const double> corner,
                                       std::span<const bool> closed_allowed);
void accumulate_box_indicator_scalar(const PointsSoA& pts, std::span<const double> b,
                                     std::uint32_t closed_mask, double alpha,
                                     std::span<double> acc);
#if defined(__x86_64__) || defined(_M_X64)
void cell_deltas_avx2(std::span<const double> values, std::span<const int> node_counts,
                      std::span<double> out);
BoxCounts count_in_anchored_box_avx2(const PointsSoA& pts, std::span<const double> corner,
                                     std::span<const bool> closed_allowed);
void accumulate_box_indicator_avx2(const PointsSoA& pts, std::span<const double> b,
                                   std::uint32_t closed_mask, double alpha,
                                   std::span<double> acc);
#endif

// Corner offset table shared by the scalar and AVX2 grid kernels: flat
// offsets and signs for the 2^d corners of a cell, mask order.
struct CornerTable {
  int dim = 0;
  std::size_t corners = 0;
  std::array<std::ptrdiff_t, 256> offset{};
  std::array<double, 256> sign{};
};
CornerTable make_corner_table(std::span<const int> node_counts);
}  // namespace detail

}  // namespace bv::kernels
