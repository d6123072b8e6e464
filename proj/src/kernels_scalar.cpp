#include <bit>
#include <stdexcept>

#include "bv/kernels.hpp"

namespace bv::kernels::detail {

CornerTable make_corner_table(std::span<const int> node_counts) {
  CornerTable t;
  t.dim = static_cast<int>(node_counts.size());
  if (t.dim < 1 || t.dim > 8) throw std::invalid_argument("cell_deltas: dimension out of range");
  std::array<std::ptrdiff_t, 8> stride{};
  stride[static_cast<std::size_t>(t.dim - 1)] = 1;
  for (int i = t.dim - 2; i >= 0; --i) {
    stride[static_cast<std::size_t>(i)] = stride[static_cast<std::size_t>(i + 1)] *
                                          node_counts[static_cast<std::size_t>(i + 1)];
  }
  t.corners = std::size_t{1} << t.dim;
  for (std::size_t u = 0; u < t.corners; ++u) {
    std::ptrdiff_t off = 0;
    for (int i = 0; i < t.dim; ++i) {
      // bit i of u set -> take the lower node on axis i (subtract one stride
      // from the cell's upper corner).
      if ((u >> i) & 1u) off -= stride[static_cast<std::size_t>(i)];
    }
    t.offset[u] = off;
    t.sign[u] = (std::popcount(static_cast<unsigned>(u)) & 1) ? -1.0 : 1.0;
  }
  return t;
}

void cell_deltas_scalar(std::span<const double> values, std::span<const int> node_counts,
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

  // Walk cells in row-major order (last axis fastest); idx points at the
  // cell's upper corner in the node grid.
  std::array<int, 8> c{};
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    for (int i = d - 1; i >= 0; --i) {
      c[static_cast<std::size_t>(i)] = static_cast<int>(
          rem % static_cast<std::size_t>(cells[static_cast<std::size_t>(i)]));
      rem /= static_cast<std::size_t>(cells[static_cast<std::size_t>(i)]);
    }
    std::size_t idx = 0;
    for (int i = 0; i < d; ++i) {
      idx = idx * static_cast<std::size_t>(node_counts[static_cast<std::size_t>(i)]) +
            static_cast<std::size_t>(c[static_cast<std::size_t>(i)] + 1);
    }
    double acc = 0.0;
    for (std::size_t u = 0; u < t.corners; ++u) {
      acc += t.sign[u] * values[idx + static_cast<std::size_t>(t.offset[u])];
    }
    out[flat] = acc;
  }
}

BoxCounts count_in_anchored_box_scalar(const PointsSoA& pts, std::span<const double> corner,
                                       std::span<const bool> closed_allowed) {
  BoxCounts counts;
  const int d = pts.dim;
  for (std::int64_t j = 0; j < pts.count; ++j) {
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

void accumulate_box_indicator_scalar(const PointsSoA& pts, std::span<const double> b,
                                     std::uint32_t closed_mask, double alpha,
                                     std::span<double> acc) {
  const int d = pts.dim;
  for (std::int64_t j = 0; j < pts.count; ++j) {
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
