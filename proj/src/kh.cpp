#include "bv/kh.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "bv/errors.hpp"
#include "bv/reduction.hpp"

namespace bv {

std::string to_string(VariationProvenance p) {
  switch (p) {
    case VariationProvenance::ladder_exact:
      return "ladder-exact";
    case VariationProvenance::refined_lower_bound:
      return "refined-lower-bound";
    case VariationProvenance::dvar_upper:
      return "dvar-upper";
  }
  return "?";
}

double empirical_error(const GridFunction& f, const PointSet& ps, double ref) {
  if (ps.points.empty()) throw std::invalid_argument("empirical_error: empty point set");
  if (f.dim() != ps.dim()) throw std::invalid_argument("empirical_error: dimension mismatch");
  std::vector<double> values(ps.points.size());
  parallel_for(values.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t j = begin; j < end; ++j) {
      values[j] = f(ps.points[j]);
    }
  });
  return std::abs(pairwise_mean(values) - ref);
}

namespace {

ReferenceIntegral quadrature_integral(const GridFunction& f) {
  const int d = f.dim();
  const int cells_1d = d <= 2 ? 1024 : 64;
  auto midpoint_scan = [&](int cells) {
    std::size_t total = 1;
    for (int i = 0; i < d; ++i) total *= static_cast<std::size_t>(cells);
    std::vector<double> values(total);
    parallel_for(total, [&](std::size_t begin, std::size_t end) {
      for (std::size_t flat = begin; flat < end; ++flat) {
        std::size_t rem = flat;
        Point p = Point::zeros(d);
        for (int i = d - 1; i >= 0; --i) {
          const auto k = rem % static_cast<std::size_t>(cells);
          p[i] = (static_cast<double>(k) + 0.5) / cells;
          rem /= static_cast<std::size_t>(cells);
        }
        values[flat] = f(p);
      }
    });
    return pairwise_mean(values);
  };
  const double coarse = midpoint_scan(cells_1d / 2);
  const double fine = midpoint_scan(cells_1d);
  ReferenceIntegral out;
  out.value = fine;
  out.provenance = IntegralProvenance::quadrature;
  out.error_estimate = std::abs(fine - coarse);
  return out;
}

}  // namespace

ReferenceIntegral reference_integral(const zoo::ZooEntry& entry) {
  if (entry.analytic_integral) {
    return {*entry.analytic_integral, IntegralProvenance::analytic, 0.0};
  }
  if (entry.fn.tabulated()) {
    // Exact integral of the step extension: cell volumes times node values.
    const TableData& t = entry.fn.table();
    const int d = t.dim();
    std::vector<double> contributions;
    contributions.reserve(t.values.size());
    std::array<int, kMaxDim> idx{};
    for (std::size_t flat = 0; flat < t.values.size(); ++flat) {
      std::size_t rem = flat;
      double vol = 1.0;
      for (int i = d - 1; i >= 0; --i) {
        const auto n = static_cast<std::size_t>(t.node_counts[static_cast<std::size_t>(i)]);
        idx[static_cast<std::size_t>(i)] = static_cast<int>(rem % n);
        rem /= n;
      }
      for (int i = 0; i < d; ++i) {
        const auto& nodes = t.node_coords[static_cast<std::size_t>(i)];
        const auto k = static_cast<std::size_t>(idx[static_cast<std::size_t>(i)]);
        const double next = (k + 1 < nodes.size()) ? nodes[k + 1] : 1.0;
        vol *= (k + 1 < nodes.size()) ? (next - nodes[k]) : 0.0;
      }
      contributions.push_back(vol * t.values[flat]);
    }
    return {pairwise_sum(contributions), IntegralProvenance::analytic, 0.0};
  }
  return quadrature_integral(entry.fn);
}

KhCertificate certify(const GridFunction& f, const PointSet& ps, const VariationValue& variation,
                      FamilyKind variation_family, const ReferenceIntegral& ref) {
  if (variation_family == FamilyKind::convex_sets) {
    throw std::invalid_argument(
        "certify: family/discrepancy mismatch - convex-family variation cannot be certified "
        "against star discrepancy (no convex-family discrepancy is implemented)");
  }
  KhCertificate cert;
  cert.function = f.label();
  cert.pointset = ps.label;
  cert.n = ps.size();
  cert.d = ps.dim();

  try {
    cert.discrepancy = star_discrepancy_exact(ps);
    cert.discrepancy_method = "exact";
  } catch (const ResourceLimitError&) {
    const int m = default_grid_bound_resolution(ps.dim());
    check_grid_bound_budget(ps, m);
    cert.discrepancy = star_discrepancy_grid_bound(ps, m).upper;
    cert.discrepancy_method = "grid_bound_upper";
  }

  cert.variation = variation;
  cert.bound = cert.discrepancy * variation.value;
  cert.reference = ref;
  cert.empirical_error = empirical_error(f, ps, ref.value);
  cert.sound = variation.is_upper_bound();
  cert.vacuous = std::isinf(cert.bound);

  if (cert.sound && !(cert.empirical_error <= cert.bound + 1e-12)) {
    throw CertifiedInequalityError(
        "Koksma-Hlawka violation: |mean - integral| = " + std::to_string(cert.empirical_error) +
        " exceeds discrepancy * variation = " + std::to_string(cert.bound) + " for " +
        cert.function + " on " + cert.pointset);
  }
  return cert;
}

}  // namespace bv
