#include "bv/variation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "bv/kernels.hpp"
#include "bv/reduction.hpp"

namespace bv {

namespace {

std::vector<std::size_t> node_strides(const TableData& t) {
  const int d = t.dim();
  std::vector<std::size_t> stride(static_cast<std::size_t>(d));
  stride[static_cast<std::size_t>(d - 1)] = 1;
  for (int i = d - 2; i >= 0; --i) {
    stride[static_cast<std::size_t>(i)] =
        stride[static_cast<std::size_t>(i + 1)] *
        static_cast<std::size_t>(t.node_counts[static_cast<std::size_t>(i + 1)]);
  }
  return stride;
}

// Sub-grid over the axes in u, all other axes pinned at their last node
// (coordinate 1). Returns values row-major over the u-axes.
std::vector<double> gather_face_slice(const TableData& t, const AxisSet& u,
                                      std::vector<int>& slice_counts) {
  const int d = t.dim();
  const auto stride = node_strides(t);
  slice_counts.clear();
  std::size_t base = 0;
  std::size_t total = 1;
  for (int i = 0; i < d; ++i) {
    if (u.contains(i)) {
      slice_counts.push_back(t.node_counts[static_cast<std::size_t>(i)]);
      total *= static_cast<std::size_t>(t.node_counts[static_cast<std::size_t>(i)]);
    } else {
      base += stride[static_cast<std::size_t>(i)] *
              static_cast<std::size_t>(t.node_counts[static_cast<std::size_t>(i)] - 1);
    }
  }
  std::vector<double> out(total);
  std::vector<std::size_t> face_strides;
  for (int i = 0; i < d; ++i) {
    if (u.contains(i)) face_strides.push_back(stride[static_cast<std::size_t>(i)]);
  }
  const int s = static_cast<int>(slice_counts.size());
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    std::size_t idx = base;
    for (int i = s - 1; i >= 0; --i) {
      const auto n = static_cast<std::size_t>(slice_counts[static_cast<std::size_t>(i)]);
      idx += (rem % n) * face_strides[static_cast<std::size_t>(i)];
      rem /= n;
    }
    out[flat] = t.values[idx];
  }
  return out;
}

double face_vitali(const TableData& t, const AxisSet& u) {
  std::vector<int> slice_counts;
  const std::vector<double> slice = gather_face_slice(t, u, slice_counts);
  std::size_t cells = 1;
  for (int n : slice_counts) cells *= static_cast<std::size_t>(n - 1);
  std::vector<double> deltas(cells);
  kernels::cell_deltas(slice, slice_counts, deltas);
  return pairwise_abs_sum(deltas);
}

VariationReport report_for_table(const TableData& t) {
  VariationReport rep;
  rep.dimension = t.dim();
  rep.cells_per_axis = t.ladder.cells_per_axis();
  const std::uint32_t full = (1u << t.dim()) - 1u;
  std::vector<double> face_values;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    const AxisSet u(mask, t.dim());
    const double v = face_vitali(t, u);
    rep.faces.emplace_back(u, v);
    face_values.push_back(v);
    if (mask == full) rep.vitali = v;
  }
  rep.hk_total = pairwise_sum(face_values);
  rep.trace.push_back({rep.cells_per_axis, rep.hk_total});
  return rep;
}

}  // namespace

double vitali_on_ladder(const GridFunction& f, const Ladder& ladder) {
  const TableData t = tabulate(f, ladder);
  return face_vitali(t, AxisSet::all(t.dim()));
}

VariationReport hk_on_ladder(const GridFunction& f, const Ladder& ladder) {
  return report_for_table(tabulate(f, ladder));
}

VariationReport hk_refined(const GridFunction& f, const Ladder& initial, double tol,
                           int max_refine) {
  if (!(tol > 0)) throw std::invalid_argument("hk_refined: tol must be positive");
  if (max_refine < 0) throw std::invalid_argument("hk_refined: max_refine must be >= 0");
  Ladder current = initial;
  VariationReport rep = hk_on_ladder(f, current);
  std::vector<VariationTraceEntry> trace = rep.trace;
  for (int step = 0; step < max_refine; ++step) {
    current = current.refined(2);
    const double previous = rep.hk_total;
    rep = hk_on_ladder(f, current);
    trace.push_back(rep.trace.front());
    if (std::abs(rep.hk_total - previous) < tol) {
      rep.converged = true;
      break;
    }
  }
  rep.trace = std::move(trace);
  return rep;
}

std::string CmViolation::describe() const {
  std::ostringstream os;
  os << "face " << face.to_string() << ", box [" << box_lower.to_string() << ", "
     << box_upper.to_string() << "], delta = " << delta;
  return os.str();
}

CmResult is_completely_monotone(const TableData& t, double tol) {
  const int d = t.dim();
  const auto stride = node_strides(t);
  const std::uint32_t full = (1u << d) - 1u;

  for (std::uint32_t smask = 1; smask <= full; ++smask) {
    // Corner offsets/signs for the face axes, mask order over subsets of S.
    std::vector<std::ptrdiff_t> offset;
    std::vector<double> sign;
    std::vector<int> s_axes;
    for (int i = 0; i < d; ++i) {
      if ((smask >> i) & 1u) s_axes.push_back(i);
    }
    const std::size_t corners = std::size_t{1} << s_axes.size();
    offset.resize(corners);
    sign.resize(corners);
    for (std::size_t w = 0; w < corners; ++w) {
      std::ptrdiff_t off = 0;
      int bits = 0;
      for (std::size_t k = 0; k < s_axes.size(); ++k) {
        if ((w >> k) & 1u) {
          off -= static_cast<std::ptrdiff_t>(stride[static_cast<std::size_t>(s_axes[k])]);
          ++bits;
        }
      }
      offset[w] = off;
      sign[w] = (bits & 1) ? -1.0 : 1.0;
    }

    // Positions: on S-axes the cell's upper node index (1..nc-1), elsewhere
    // any node index (0..nc-1). Row-major scan for a deterministic witness.
    std::array<int, kMaxDim> pos{};
    std::array<int, kMaxDim> lo{};
    std::array<int, kMaxDim> hi{};
    for (int i = 0; i < d; ++i) {
      const bool on_face = (smask >> i) & 1u;
      lo[static_cast<std::size_t>(i)] = on_face ? 1 : 0;
      hi[static_cast<std::size_t>(i)] = t.node_counts[static_cast<std::size_t>(i)] - 1;
      pos[static_cast<std::size_t>(i)] = lo[static_cast<std::size_t>(i)];
    }
    while (true) {
      std::size_t idx = 0;
      for (int i = 0; i < d; ++i) {
        idx += stride[static_cast<std::size_t>(i)] *
               static_cast<std::size_t>(pos[static_cast<std::size_t>(i)]);
      }
      double acc = 0.0;
      for (std::size_t w = 0; w < corners; ++w) {
        acc += sign[w] * t.values[idx + static_cast<std::size_t>(offset[w])];
      }
      if (acc < -tol) {
        CmViolation v;
        v.face = AxisSet(smask, d);
        Point lo_pt = Point::zeros(d);
        Point hi_pt = Point::zeros(d);
        for (int i = 0; i < d; ++i) {
          const auto& nodes = t.node_coords[static_cast<std::size_t>(i)];
          const int p = pos[static_cast<std::size_t>(i)];
          if ((smask >> i) & 1u) {
            lo_pt[i] = nodes[static_cast<std::size_t>(p - 1)];
            hi_pt[i] = nodes[static_cast<std::size_t>(p)];
          } else {
            lo_pt[i] = nodes[static_cast<std::size_t>(p)];
            hi_pt[i] = nodes[static_cast<std::size_t>(p)];
          }
        }
        v.box_lower = lo_pt;
        v.box_upper = hi_pt;
        v.delta = acc;
        return {false, v};
      }
      int axis = d - 1;
      while (axis >= 0) {
        if (++pos[static_cast<std::size_t>(axis)] <= hi[static_cast<std::size_t>(axis)]) break;
        pos[static_cast<std::size_t>(axis)] = lo[static_cast<std::size_t>(axis)];
        --axis;
      }
      if (axis < 0) break;
    }
  }
  return {true, std::nullopt};
}

CmResult is_completely_monotone(const TableData& t) {
  double max_abs = 0.0;
  for (double v : t.values) max_abs = std::max(max_abs, std::abs(v));
  return is_completely_monotone(t, 1e-12 * (1.0 + max_abs));
}

CmResult is_completely_monotone(const GridFunction& f, const Ladder& ladder) {
  return is_completely_monotone(tabulate(f, ladder));
}

MonotoneDecomposition decompose_monotone(const GridFunction& f, const Ladder& ladder) {
  const TableData t = tabulate(f, ladder);
  const int d = t.dim();
  const auto stride = node_strides(t);
  const std::size_t total = t.values.size();
  const std::vector<double> nu = anchored_increments(t);

  std::vector<double> plus(total);
  std::vector<double> minus(total);
  for (std::size_t i = 0; i < total; ++i) {
    if (i == 0) {
      plus[i] = nu[i];  // anchor: a constant shift never enters any increment
      minus[i] = 0.0;
    } else if (nu[i] >= 0.0) {
      plus[i] = nu[i];
      minus[i] = 0.0;
    } else {
      plus[i] = 0.0;
      minus[i] = -nu[i];
    }
  }

  // Forward prefix sums along each axis rebuild node values from increments.
  for (int axis = 0; axis < d; ++axis) {
    const std::size_t st = stride[static_cast<std::size_t>(axis)];
    const std::size_t n = static_cast<std::size_t>(t.node_counts[static_cast<std::size_t>(axis)]);
    for (std::size_t flat = 0; flat < total; ++flat) {
      const std::size_t axis_index = (flat / st) % n;
      if (axis_index > 0) {
        plus[flat] += plus[flat - st];
        minus[flat] += minus[flat - st];
      }
    }
  }

  MonotoneDecomposition out{
      GridFunction::from_table(ladder, std::move(plus), f.label() + "+part"),
      GridFunction::from_table(ladder, std::move(minus), f.label() + "-part"), ladder};

  const CmResult check_plus = is_completely_monotone(out.plus.table());
  const CmResult check_minus = is_completely_monotone(out.minus.table());
  if (!check_plus.completely_monotone || !check_minus.completely_monotone) {
    const std::string which = check_plus.completely_monotone ? "minus" : "plus";
    const auto& viol =
        check_plus.completely_monotone ? check_minus.violation : check_plus.violation;
    throw std::logic_error("decompose_monotone: " + which +
                           " part failed the monotonicity re-check: " + viol->describe());
  }
  return out;
}

}  // namespace bv
