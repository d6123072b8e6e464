#include "bv/discrepancy.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "bv/errors.hpp"
#include "bv/kernels.hpp"
#include "bv/reduction.hpp"
#include "bv/rng.hpp"

namespace bv {

namespace {

kernels::PointsSoA to_soa(const PointSet& ps) {
  kernels::PointsSoA soa;
  soa.dim = ps.dim();
  soa.count = ps.size();
  soa.axis.assign(static_cast<std::size_t>(soa.dim),
                  std::vector<double>(static_cast<std::size_t>(soa.count)));
  for (std::int64_t j = 0; j < soa.count; ++j) {
    for (int i = 0; i < soa.dim; ++i) {
      soa.axis[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          ps.points[static_cast<std::size_t>(j)][i];
    }
  }
  return soa;
}

void validate(const PointSet& ps) {
  if (ps.points.empty()) throw std::invalid_argument("PointSet: needs at least one point");
  const int d = ps.dim();
  for (const Point& p : ps.points) {
    if (p.dim() != d) throw std::invalid_argument("PointSet: mixed dimensions");
  }
}

double local_max(const kernels::PointsSoA& soa, std::span<const double> corner,
                 std::span<const bool> closed_allowed, double n) {
  double vol = 1.0;
  for (double c : corner) vol *= c;
  const kernels::BoxCounts counts = kernels::count_in_anchored_box(soa, corner, closed_allowed);
  const double below = vol - static_cast<double>(counts.open) / n;
  const double above = static_cast<double>(counts.closed) / n - vol;
  return std::max(below, above);
}

}  // namespace

double star_discrepancy_exact(const PointSet& ps) {
  validate(ps);
  const int d = ps.dim();
  const int n = ps.size();
  const std::array<int, 3> budget{4096, 256, 64};
  if (d > 3 || n > budget[static_cast<std::size_t>(d - 1)]) {
    throw ResourceLimitError(
        "star_discrepancy_exact: N^d search too large (caps: 4096 for d=1, 256 for d=2, "
        "64 for d=3); use star_discrepancy_grid_bound instead");
  }

  const kernels::PointsSoA soa = to_soa(ps);
  std::vector<std::vector<double>> critical(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    auto& axis = critical[static_cast<std::size_t>(i)];
    axis = soa.axis[static_cast<std::size_t>(i)];
    axis.push_back(1.0);
    std::sort(axis.begin(), axis.end());
    axis.erase(std::unique(axis.begin(), axis.end()), axis.end());
  }

  std::size_t total = 1;
  for (const auto& axis : critical) total *= axis.size();

  // Local values are materialized and reduced serially; max over doubles is
  // order-independent, so the parallel fill keeps determinism.
  std::vector<double> local(total);
  parallel_for(total, [&](std::size_t begin, std::size_t end) {
    std::array<double, kMaxDim> corner{};
    std::array<bool, kMaxDim> closed_allowed{};
    for (std::size_t flat = begin; flat < end; ++flat) {
      std::size_t rem = flat;
      for (int i = d - 1; i >= 0; --i) {
        const auto& axis = critical[static_cast<std::size_t>(i)];
        corner[static_cast<std::size_t>(i)] = axis[rem % axis.size()];
        closed_allowed[static_cast<std::size_t>(i)] = corner[static_cast<std::size_t>(i)] < 1.0;
        rem /= axis.size();
      }
      local[flat] = local_max(soa, std::span<const double>(corner.data(), d),
                              std::span<const bool>(closed_allowed.data(), d),
                              static_cast<double>(n));
    }
  });
  double best = 0.0;
  for (double v : local) best = std::max(best, v);
  return best;
}

DiscrepancyBracket star_discrepancy_grid_bound(const PointSet& ps, int m) {
  validate(ps);
  if (m < 2) throw std::invalid_argument("star_discrepancy_grid_bound: m must be >= 2");
  const int d = ps.dim();
  const kernels::PointsSoA soa = to_soa(ps);

  const std::size_t per_axis = static_cast<std::size_t>(m) + 1;
  std::size_t total = 1;
  for (int i = 0; i < d; ++i) total *= per_axis;

  std::vector<double> local(total);
  parallel_for(total, [&](std::size_t begin, std::size_t end) {
    std::array<double, kMaxDim> corner{};
    std::array<bool, kMaxDim> closed_allowed{};
    for (std::size_t flat = begin; flat < end; ++flat) {
      std::size_t rem = flat;
      for (int i = d - 1; i >= 0; --i) {
        const auto k = rem % per_axis;
        corner[static_cast<std::size_t>(i)] = static_cast<double>(k) / m;
        closed_allowed[static_cast<std::size_t>(i)] = k < per_axis - 1;
        rem /= per_axis;
      }
      local[flat] = local_max(soa, std::span<const double>(corner.data(), d),
                              std::span<const bool>(closed_allowed.data(), d),
                              static_cast<double>(ps.size()));
    }
  });
  double best = 0.0;
  for (double v : local) best = std::max(best, v);
  return {best, best + static_cast<double>(d) / m};
}

int default_grid_bound_resolution(int dim) {
  if (dim <= 2) return 512;
  if (dim == 3) return 48;
  return 8;
}

PointSet generate_halton(int n, int d) {
  if (n < 1 || d < 1 || d > kMaxDim) throw std::invalid_argument("halton: bad n or d");
  static constexpr int primes[kMaxDim] = {2, 3, 5, 7, 11, 13, 17, 19};
  PointSet ps;
  ps.label = "halton:n=" + std::to_string(n) + ",d=" + std::to_string(d);
  ps.points.reserve(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) {
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
    ps.points.push_back(p);
  }
  return ps;
}

PointSet generate_rank1_lattice(int n, int d, std::span<const std::uint64_t> g) {
  if (n < 1 || d < 1 || d > kMaxDim) throw std::invalid_argument("lattice: bad n or d");
  if (g.size() != static_cast<std::size_t>(d)) {
    throw std::invalid_argument("lattice: generating vector must have d entries");
  }
  PointSet ps;
  std::ostringstream label;
  label << "lattice:n=" << n << ",d=" << d << ",g=";
  for (int i = 0; i < d; ++i) label << (i ? "," : "") << g[static_cast<std::size_t>(i)];
  ps.label = label.str();
  ps.points.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    Point p = Point::zeros(d);
    for (int i = 0; i < d; ++i) {
      const std::uint64_t num =
          (static_cast<std::uint64_t>(k) * g[static_cast<std::size_t>(i)]) %
          static_cast<std::uint64_t>(n);
      p[i] = static_cast<double>(num) / n;
    }
    ps.points.push_back(p);
  }
  return ps;
}

PointSet generate_uniform_random(int n, int d, std::uint64_t seed) {
  if (n < 1 || d < 1 || d > kMaxDim) throw std::invalid_argument("random: bad n or d");
  PointSet ps;
  ps.label = "random:n=" + std::to_string(n) + ",d=" + std::to_string(d) +
             ",seed=" + std::to_string(seed);
  ps.seed = seed;
  ps.points.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    Point p = Point::zeros(d);
    for (int i = 0; i < d; ++i) {
      p[i] = uniform01(seed, static_cast<std::uint64_t>(k) * static_cast<std::uint64_t>(d) +
                                 static_cast<std::uint64_t>(i));
    }
    ps.points.push_back(p);
  }
  return ps;
}

PointSet generate_centered_regular(int n) {
  if (n < 1) throw std::invalid_argument("centered: bad n");
  PointSet ps;
  ps.label = "centered:n=" + std::to_string(n) + ",d=1";
  ps.points.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    ps.points.push_back(Point{static_cast<double>(2 * i - 1) / (2.0 * n)});
  }
  return ps;
}

namespace {

std::vector<std::pair<std::string, std::string>> parse_kv(const std::string& body) {
  std::vector<std::pair<std::string, std::string>> out;
  std::string token;
  std::istringstream is(body);
  while (std::getline(is, token, ',')) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) {
      // continuation of a list value (e.g. g=1,7)
      if (out.empty()) throw std::invalid_argument("pointset spec: bad parameter '" + token + "'");
      out.back().second += "," + token;
    } else {
      out.emplace_back(token.substr(0, eq), token.substr(eq + 1));
    }
  }
  return out;
}

int require_int(const std::vector<std::pair<std::string, std::string>>& kv,
                const std::string& key) {
  for (const auto& [k, v] : kv) {
    if (k == key) return std::stoi(v);
  }
  throw std::invalid_argument("pointset spec: missing parameter '" + key + "'");
}

}  // namespace

PointSet parse_pointset_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  if (kind == "halton" || kind == "lattice" || kind == "random" || kind == "centered") {
    const auto kv = parse_kv(colon == std::string::npos ? "" : spec.substr(colon + 1));
    if (kind == "halton") return generate_halton(require_int(kv, "n"), require_int(kv, "d"));
    if (kind == "centered") {
      const int n = require_int(kv, "n");
      for (const auto& [k, v] : kv) {
        if (k == "d" && std::stoi(v) != 1) {
          throw std::invalid_argument("centered: only d=1 is defined");
        }
      }
      return generate_centered_regular(n);
    }
    if (kind == "random") {
      std::uint64_t seed = 0;
      for (const auto& [k, v] : kv) {
        if (k == "seed") seed = std::stoull(v);
      }
      return generate_uniform_random(require_int(kv, "n"), require_int(kv, "d"), seed);
    }
    const int n = require_int(kv, "n");
    const int d = require_int(kv, "d");
    std::vector<std::uint64_t> g;
    for (const auto& [k, v] : kv) {
      if (k != "g") continue;
      std::istringstream is(v);
      std::string item;
      while (std::getline(is, item, ',')) g.push_back(std::stoull(item));
    }
    if (g.empty()) {
      // Korobov-style default: 1, 7, 7^2, ... reduced mod n.
      g.push_back(1);
      for (int i = 1; i < d; ++i) {
        g.push_back((g.back() * 7) % static_cast<std::uint64_t>(n));
      }
    }
    return generate_rank1_lattice(n, d, g);
  }
  return read_pointset_csv(spec);
}

PointSet read_pointset_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open point set file '" + path + "'");
  PointSet ps;
  ps.label = path;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.front() == '#') {
      const auto lpos = line.find("label=");
      if (lpos != std::string::npos) {
        auto end = line.find(',', lpos);
        ps.label = line.substr(lpos + 6, end == std::string::npos ? end : end - (lpos + 6));
      }
      const auto spos = line.find("seed=");
      if (spos != std::string::npos) ps.seed = std::stoull(line.substr(spos + 5));
      continue;
    }
    std::vector<double> coords;
    std::istringstream is(line);
    std::string item;
    while (std::getline(is, item, ',')) coords.push_back(std::stod(item));
    ps.points.emplace_back(std::span<const double>(coords));
  }
  validate(ps);
  return ps;
}

void write_pointset_csv(const PointSet& ps, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write point set file '" + path + "'");
  out << "# label=" << ps.label;
  if (ps.seed) out << ", seed=" << *ps.seed;
  out << "\n";
  char buf[32];
  for (const Point& p : ps.points) {
    for (int i = 0; i < p.dim(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", p[i]);
      out << (i ? "," : "") << buf;
    }
    out << "\n";
  }
}

}  // namespace bv
