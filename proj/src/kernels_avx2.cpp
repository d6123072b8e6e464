// AVX2 variants of the reference kernels. This translation unit is compiled
// with -mavx2 (no FMA: fusing would change results relative to the scalar
// kernels). Each lane performs the same operation sequence as one scalar
// iteration, so outputs are bit-identical to the scalar backend.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <array>
#include <stdexcept>

#include "bv/kernels.hpp"

namespace bv::kernels::detail {

void cell_deltas_avx2(std::span<const double> values, std::span<const int> node_counts,
                      std::span<double> out) {
  const CornerTable t = make_corner_table(node_counts);
  const int d = t.dim;
  std::array<int, 8> cells{};
  std::size_t total = 1;
  for (int i = 0; i < d; ++i) {
    cells[static_cast<std::size_t>(i)] = node_counts[static_cast<std::size_t>(i)] - 1;
    total *= static_cast<std::size_t>(cells[static_cast<std::size_t>(i)]);
  }
  if (out.size() != total) throw std::invalid_argument("cell_deltas: bad output size");

  const int last_cells = cells[static_cast<std::size_t>(d - 1)];
  const std::size_t rows = total / static_cast<std::size_t>(last_cells);
  std::array<int, 8> c{};
  for (std::size_t row = 0; row < rows; ++row) {
    // Multi-index of the row over the leading d-1 axes.
    std::size_t rem = row;
    for (int i = d - 2; i >= 0; --i) {
      c[static_cast<std::size_t>(i)] = static_cast<int>(
          rem % static_cast<std::size_t>(cells[static_cast<std::size_t>(i)]));
      rem /= static_cast<std::size_t>(cells[static_cast<std::size_t>(i)]);
    }
    std::size_t base = 0;
    for (int i = 0; i < d - 1; ++i) {
      base = base * static_cast<std::size_t>(node_counts[static_cast<std::size_t>(i)]) +
             static_cast<std::size_t>(c[static_cast<std::size_t>(i)] + 1);
    }
    base = base * static_cast<std::size_t>(node_counts[static_cast<std::size_t>(d - 1)]);
    double* out_row = out.data() + row * static_cast<std::size_t>(last_cells);
    const double* upper = values.data() + base + 1;  // node index = cell index + 1 on last axis

    int k = 0;
    for (; k + 4 <= last_cells; k += 4) {
      __m256d acc = _mm256_setzero_pd();
      for (std::size_t u = 0; u < t.corners; ++u) {
        const __m256d v = _mm256_loadu_pd(upper + k + t.offset[u]);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_set1_pd(t.sign[u]), v));
      }
      _mm256_storeu_pd(out_row + k, acc);
    }
    for (; k < last_cells; ++k) {
      double acc = 0.0;
      for (std::size_t u = 0; u < t.corners; ++u) {
        acc += t.sign[u] * upper[k + t.offset[u]];
      }
      out_row[k] = acc;
    }
  }
}

BoxCounts count_in_anchored_box_avx2(const PointsSoA& pts, std::span<const double> corner,
                                     std::span<const bool> closed_allowed) {
  BoxCounts counts;
  const int d = pts.dim;
  const std::int64_t n = pts.count;
  std::int64_t j = 0;
  for (; j + 4 <= n; j += 4) {
    __m256d open_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(-1));
    __m256d closed_mask = open_mask;
    for (int i = 0; i < d; ++i) {
      const __m256d x = _mm256_loadu_pd(pts.axis_data(i) + j);
      const __m256d t = _mm256_set1_pd(corner[static_cast<std::size_t>(i)]);
      const __m256d lt = _mm256_cmp_pd(x, t, _CMP_LT_OQ);
      open_mask = _mm256_and_pd(open_mask, lt);
      if (closed_allowed[static_cast<std::size_t>(i)]) {
        closed_mask = _mm256_and_pd(closed_mask, _mm256_cmp_pd(x, t, _CMP_LE_OQ));
      } else {
        closed_mask = _mm256_and_pd(closed_mask, lt);
      }
    }
    counts.open += __builtin_popcount(static_cast<unsigned>(_mm256_movemask_pd(open_mask)));
    counts.closed += __builtin_popcount(static_cast<unsigned>(_mm256_movemask_pd(closed_mask)));
  }
  for (; j < n; ++j) {
    bool open = true;
    bool closed = true;
    for (int i = 0; i < d; ++i) {
      const double x = pts.axis[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      const double t = corner[static_cast<std::size_t>(i)];
      if (!(x < t)) open = false;
      if (closed_allowed[static_cast<std::size_t>(i)] ? !(x <= t) : !(x < t)) closed = false;
      if (!open && !closed) break;
    }
    counts.open += open ? 1 : 0;
    counts.closed += closed ? 1 : 0;
  }
  return counts;
}

void accumulate_box_indicator_avx2(const PointsSoA& pts, std::span<const double> b,
                                   std::uint32_t closed_mask, double alpha,
                                   std::span<double> acc) {
  const int d = pts.dim;
  const std::int64_t n = pts.count;
  const __m256d va = _mm256_set1_pd(alpha);
  std::int64_t j = 0;
  for (; j + 4 <= n; j += 4) {
    __m256d inside = _mm256_castsi256_pd(_mm256_set1_epi64x(-1));
    for (int i = 0; i < d; ++i) {
      const __m256d x = _mm256_loadu_pd(pts.axis_data(i) + j);
      const __m256d t = _mm256_set1_pd(b[static_cast<std::size_t>(i)]);
      const int cmp = ((closed_mask >> i) & 1u) ? _CMP_LE_OQ : _CMP_LT_OQ;
      inside = _mm256_and_pd(inside, cmp == _CMP_LE_OQ ? _mm256_cmp_pd(x, t, _CMP_LE_OQ)
                                                       : _mm256_cmp_pd(x, t, _CMP_LT_OQ));
    }
    const __m256d cur = _mm256_loadu_pd(acc.data() + j);
    // Blend instead of adding a masked zero: adding 0.0 to -0.0 would flip
    // the sign bit and break bit-equality with the scalar kernel.
    const __m256d added = _mm256_add_pd(cur, va);
    _mm256_storeu_pd(acc.data() + j, _mm256_blendv_pd(cur, added, inside));
  }
  for (; j < n; ++j) {
    bool inside = true;
    for (int i = 0; i < d; ++i) {
      const double x = pts.axis[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      const double t = b[static_cast<std::size_t>(i)];
      if ((closed_mask >> i) & 1u) {
        if (!(x <= t)) {
          inside = false;
          break;
        }
      } else {
        if (!(x < t)) {
          inside = false;
          break;
        }
      }
    }
    if (inside) acc[static_cast<std::size_t>(j)] += alpha;
  }
}

}  // namespace bv::kernels::detail

#endif  // x86_64
