#include "bv/approx.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "bv/delta.hpp"
#include "bv/errors.hpp"

namespace bv {

namespace {

// One-dimensional construction data for one axis: breakpoints y_1 = 0 < ...
// < y_M < 1 (with 1 as the implicit successor of y_M) and midpoints
// z_l in (y_l, y_{l+1}).
struct AxisPartition {
  std::vector<double> y;
  std::vector<double> z;
  int levels() const { return static_cast<int>(y.size()); }
};

double snap(double x, double grid) { return std::round(x / grid) * grid; }

// inf { s : g(s) >= t } for increasing g; lands on the jump location when t
// is skipped over.
double lower_level_point(const std::function<double(double)>& g, double t, double grid) {
  if (g(0.0) >= t) return 0.0;
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > grid / 4.0) {
    const double mid = lo + (hi - lo) / 2.0;
    if (g(mid) >= t) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

AxisPartition build_axis_partition(const GridFunction& f, int axis, int n,
                                   const ApproxOptions& options) {
  const int d = f.dim();
  auto edge = [&](double s) {
    Point p = Point::ones(d);
    p[axis] = s;
    return f(p);
  };
  const double lo = edge(0.0);
  const double hi = edge(1.0);

  std::vector<double> ys{0.0};
  if (hi - lo > 0.0) {
    const int levels = static_cast<int>(std::ceil(static_cast<double>(n) * (hi - lo)));
    for (int l = 2; l <= levels; ++l) {
      const double t = lo + (hi - lo) * static_cast<double>(l - 1) / levels;
      ys.push_back(snap(lower_level_point(edge, t, options.breakpoint_grid),
                        options.breakpoint_grid));
    }
  }
  ys.push_back(1.0);
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());

  AxisPartition part;
  part.y.assign(ys.begin(), ys.end() - 1);  // drop the terminal 1
  part.z.resize(part.y.size());
  for (std::size_t l = 0; l < part.y.size(); ++l) {
    const double next = (l + 1 < part.y.size()) ? part.y[l + 1] : 1.0;
    part.z[l] = part.y[l] + (next - part.y[l]) / 2.0;
  }
  return part;
}

}  // namespace

SimpleFunction approximate_monotone(const GridFunction& f, int n, const ApproxOptions& options) {
  if (n < 1) throw std::invalid_argument("approximate_monotone: n must be >= 1");
  const int d = f.dim();
  const CmResult cm = is_completely_monotone(f, Ladder::uniform(d, options.working_cells));
  if (!cm.completely_monotone) {
    throw PreconditionError("approximate_monotone: function is not completely monotone",
                            cm.violation->describe());
  }

  std::vector<AxisPartition> axes;
  axes.reserve(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) axes.push_back(build_axis_partition(f, i, n, options));

  const SetFamily family{FamilyKind::anchored_boxes, d};
  std::vector<Term> terms;

  const std::uint32_t full = (1u << d) - 1u;
  std::array<int, kMaxDim> level{};
  for (std::uint32_t umask = 0; umask <= full; ++umask) {
    // Iterate over the face grid: level l_i in 1..M_i on the axes of u, and
    // the implicit terminal level M_i + 1 (coordinate 1) elsewhere.
    for (int i = 0; i < d; ++i) {
      level[static_cast<std::size_t>(i)] =
          ((umask >> i) & 1u) ? 1 : axes[static_cast<std::size_t>(i)].levels() + 1;
    }
    while (true) {
      for (std::uint32_t vmask = 0; vmask <= full; ++vmask) {
        bool empty_box = false;
        for (int i = 0; i < d && !empty_box; ++i) {
          const bool in_u = (umask >> i) & 1u;
          const bool in_v = (vmask >> i) & 1u;
          if (in_u && level[static_cast<std::size_t>(i)] == 1 && !in_v) empty_box = true;
        }
        if (empty_box) continue;

        Point corner = Point::ones(d);
        Point sample = Point::zeros(d);
        Point sample_next = Point::zeros(d);
        for (int i = 0; i < d; ++i) {
          const AxisPartition& ax = axes[static_cast<std::size_t>(i)];
          const int li = level[static_cast<std::size_t>(i)];
          const bool in_u = (umask >> i) & 1u;
          const bool in_v = (vmask >> i) & 1u;
          corner[i] = in_u ? ax.y[static_cast<std::size_t>(li - 1)] : 1.0;
          if (in_v) {
            // The breakpoint itself; its successor in the interleaved
            // breakpoint/midpoint ladder is the midpoint of its interval
            // (the terminal level 1 is its own successor).
            if (in_u) {
              sample[i] = ax.y[static_cast<std::size_t>(li - 1)];
              sample_next[i] = ax.z[static_cast<std::size_t>(li - 1)];
            } else {
              sample[i] = 1.0;
              sample_next[i] = 1.0;
            }
          } else {
            // The midpoint below the breakpoint; its successor is the next
            // breakpoint, or 1 past the last midpoint.
            sample[i] = ax.z[static_cast<std::size_t>(li - 2)];
            sample_next[i] = (li - 1 < ax.levels()) ? ax.y[static_cast<std::size_t>(li - 1)] : 1.0;
          }
        }

        const std::uint32_t wmask = umask | (~vmask & full);
        const AxisSet w(wmask, d);
        const double sign = (w.count() & 1) ? -1.0 : 1.0;
        const double alpha = sign * box_delta_on(f, sample, sample_next, w);
        if (alpha != 0.0) {
          terms.push_back({alpha, SetMember::box(BoxV::anchored(corner, AxisSet(vmask, d)))});
        }
      }

      // Advance the face multi-index (axes of u only, last axis fastest).
      int axis = d - 1;
      while (axis >= 0) {
        if (!((umask >> axis) & 1u)) {
          --axis;
          continue;
        }
        if (++level[static_cast<std::size_t>(axis)] <=
            axes[static_cast<std::size_t>(axis)].levels()) {
          break;
        }
        level[static_cast<std::size_t>(axis)] = 1;
        --axis;
      }
      if (axis < 0) break;
    }
  }
  return SimpleFunction(family, std::move(terms));
}

SimpleFunction table_to_simple(const TableData& table) {
  const int d = table.dim();
  const std::size_t total = table.values.size();
  const std::vector<double> nu = anchored_increments(table);

  const SetFamily family{FamilyKind::anchored_boxes, d};
  std::vector<Term> terms;
  std::array<int, kMaxDim> idx{};
  for (std::size_t flat = 0; flat < total; ++flat) {
    if (nu[flat] == 0.0) continue;
    std::size_t rem = flat;
    for (int i = d - 1; i >= 0; --i) {
      const auto n = static_cast<std::size_t>(table.node_counts[static_cast<std::size_t>(i)]);
      idx[static_cast<std::size_t>(i)] = static_cast<int>(rem % n);
      rem /= n;
    }
    // The increment turns on at {x >= node}; expand that upper set by
    // inclusion-exclusion over the axes with a positive node index.
    std::uint32_t positive = 0;
    for (int i = 0; i < d; ++i) {
      if (idx[static_cast<std::size_t>(i)] > 0) positive |= 1u << i;
    }
    std::uint32_t u = positive;
    while (true) {
      Point corner = Point::ones(d);
      for (int i = 0; i < d; ++i) {
        if ((u >> i) & 1u) {
          corner[i] = table.node_coords[static_cast<std::size_t>(i)]
                                       [static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
        }
      }
      const double sign = (std::popcount(u) & 1) ? -1.0 : 1.0;
      const AxisSet closed = AxisSet(u, d).complement();
      terms.push_back({sign * nu[flat], SetMember::box(BoxV::anchored(corner, closed))});
      if (u == 0) break;
      u = (u - 1) & positive;
    }
  }
  return SimpleFunction(family, std::move(terms));
}

namespace {

std::vector<Point> halton_points(int count, int d) {
  static constexpr int primes[kMaxDim] = {2, 3, 5, 7, 11, 13, 17, 19};
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int k = 1; k <= count; ++k) {
    Point p = Point::zeros(d);
    for (int i = 0; i < d; ++i) {
      double inv = 0.0;
      double denom = 1.0;
      for (int v = k; v > 0; v /= primes[i]) {
        denom *= primes[i];
        inv += static_cast<double>(v % primes[i]) / denom;
      }
      p[i] = inv;
    }
    out.push_back(p);
  }
  return out;
}

double sampled_sup_gap(const GridFunction& f, const TableData& table, int samples) {
  const std::vector<Point> pts = halton_points(samples, f.dim());
  double gap = 0.0;
  for (const Point& p : pts) gap = std::max(gap, std::abs(f(p) - table.eval(p)));
  return gap;
}

}  // namespace

DvarResult dvar_upper(const GridFunction& f, const SetFamily& family, int n_max,
                      const std::optional<SimpleFunction>& exact_rep,
                      const ApproxOptions& options) {
  if (n_max < 1) throw std::invalid_argument("dvar_upper: n_max must be >= 1");
  const int d = f.dim();
  if (family.dim != d) throw std::invalid_argument("dvar_upper: family dimension mismatch");
  DvarResult out;

  if (exact_rep) {
    if (exact_rep->family().kind != family.kind || exact_rep->dim() != d) {
      throw std::invalid_argument("dvar_upper: exact representation is over a different family");
    }
    const double vs = vs_upper(*exact_rep);
    out.value = vs;
    out.finite = true;
    out.trace.push_back({0, vs, 0.0});
    return out;
  }

  const CmResult cm = is_completely_monotone(f, Ladder::uniform(d, options.working_cells));
  if (cm.completely_monotone) {
    double best = std::numeric_limits<double>::infinity();
    for (int n = 1; n <= n_max; n *= 2) {
      const SimpleFunction fn = approximate_monotone(f, n, options);
      const double vs = vs_upper(fn);
      best = std::min(best, vs);
      out.trace.push_back({n, vs, static_cast<double>(d) / n});
    }
    out.value = best;
    out.finite = true;
    return out;
  }

  // Not completely monotone: exhibit exact representations of ladder
  // tabulations. These approximate f uniformly only when f is itself a
  // ladder step; otherwise the sup gap stalls and no finite bound follows.
  double best = std::numeric_limits<double>::infinity();
  bool converged = false;
  for (int m = 2; m <= n_max; m *= 2) {
    const TableData table = tabulate(f, Ladder::uniform(d, m));
    const SimpleFunction fm = table_to_simple(table);
    const double vs = vs_upper(fm);
    const double gap = sampled_sup_gap(f, table, 4096);
    out.trace.push_back({m, vs, gap});
    if (gap <= 1e-9) {
      best = std::min(best, vs);
      converged = true;
    }
  }
  out.value = converged ? best : std::numeric_limits<double>::infinity();
  out.finite = converged;
  return out;
}

bool increments_dominated(const GridFunction& f, const Point& x, const Point& a, int i, int j) {
  if (i == j) throw std::invalid_argument("increments_dominated: axes must differ");
  const int d = f.dim();
  Point move_j = a;
  move_j[j] = x[j];
  Point pin_i = a;
  pin_i[i] = 1.0;
  Point pin_i_move_j = pin_i;
  pin_i_move_j[j] = x[j];
  Point edge_x = Point::ones(d);
  edge_x[j] = x[j];
  Point edge_a = Point::ones(d);
  edge_a[j] = a[j];

  const double lhs = std::abs(f(move_j) - f(a));
  const double mid = std::abs(f(pin_i_move_j) - f(pin_i));
  const double rhs = std::abs(f(edge_x) - f(edge_a));
  const double scale = 1.0 + std::max({std::abs(lhs), std::abs(mid), std::abs(rhs)});
  const double tol = 1e-12 * scale;
  return lhs <= mid + tol && mid <= rhs + tol;
}

double sup_norm(const GridFunction& f) {
  if (f.tabulated()) {
    double best = 0.0;
    for (double v : f.table().values) best = std::max(best, std::abs(v));
    return best;
  }
  double best = 0.0;
  for (const Point& p : halton_points(1 << 13, f.dim())) best = std::max(best, std::abs(f(p)));
  for (std::uint32_t corner = 0; corner < (1u << f.dim()); ++corner) {
    Point p = Point::zeros(f.dim());
    for (int i = 0; i < f.dim(); ++i) p[i] = ((corner >> i) & 1u) ? 1.0 : 0.0;
    best = std::max(best, std::abs(f(p)));
  }
  return best;
}

double algebra_norm(double sup, double sigma, double variation) {
  if (!(sigma > 0.0)) throw std::invalid_argument("algebra_norm: sigma must be positive");
  return sup + sigma * variation;
}

}  // namespace bv
