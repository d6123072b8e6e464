#include "bv/zoo.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "bv/delta.hpp"
#include "bv/errors.hpp"
#include "bv/rng.hpp"
#include "bv/variation.hpp"

#include "json.hpp"

namespace bv::zoo {

namespace {

std::vector<std::string> base_names() {
  return {"prod", "linear", "expsum", "halfplane", "box", "disc", "step1d", "table", "randtable"};
}

// A witness box on which the alternating sum is negative, proving the
// entry's completely_monotone = false flag.
struct CmWitnessBox {
  AxisSet face;
  Point lower;
  Point upper;
};

void verify_entry(const ZooEntry& entry, const std::optional<CmWitnessBox>& witness) {
  const int d = entry.fn.dim();
  const int cells = d <= 3 ? 16 : 2;
  if (entry.completely_monotone) {
    const CmResult cm = is_completely_monotone(entry.fn, Ladder::uniform(d, cells));
    if (!cm.completely_monotone) {
      throw std::logic_error("zoo entry '" + entry.name + "' flagged completely monotone but " +
                             cm.violation->describe());
    }
  } else {
    if (!witness) {
      throw std::logic_error("zoo entry '" + entry.name +
                             "' needs an explicit monotonicity witness");
    }
    const double delta = box_delta_on(entry.fn, witness->lower, witness->upper, witness->face);
    if (!(delta < 0.0)) {
      throw std::logic_error("zoo entry '" + entry.name +
                             "' monotonicity witness is not violating (delta = " +
                             std::to_string(delta) + ")");
    }
  }
}

// Scans axis-aligned grid lines for a decreasing adjacent pair; the box
// between the two nodes is a concrete monotonicity violation.
std::optional<CmWitnessBox> find_indicator_witness(const GridFunction& f) {
  const int d = f.dim();
  constexpr int kScan = 64;
  for (int axis = 0; axis < d; ++axis) {
    for (int line = 0; line <= kScan; ++line) {
      Point base = Point::zeros(d);
      for (int i = 0; i < d; ++i) {
        if (i != axis) base[i] = static_cast<double>(line) / kScan;
      }
      for (int k = 0; k + 1 <= kScan; ++k) {
        Point lo = base;
        Point hi = base;
        lo[axis] = static_cast<double>(k) / kScan;
        hi[axis] = static_cast<double>(k + 1) / kScan;
        if (f(hi) < f(lo)) return CmWitnessBox{AxisSet::single(axis, d), lo, hi};
      }
    }
  }
  return std::nullopt;
}

std::vector<std::pair<std::string, std::string>> parse_params(const std::string& body) {
  std::vector<std::pair<std::string, std::string>> out;
  std::string token;
  std::istringstream is(body);
  while (std::getline(is, token, ';')) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("function spec: bad parameter '" + token + "'");
    }
    out.emplace_back(token.substr(0, eq), token.substr(eq + 1));
  }
  return out;
}

std::vector<double> parse_vector(const std::string& v) {
  std::vector<double> out;
  std::istringstream is(v);
  std::string item;
  while (std::getline(is, item, ',')) out.push_back(std::stod(item));
  return out;
}

ZooEntry make_prod(int d) {
  ZooEntry e;
  e.name = "prod";
  e.fn = GridFunction::from_callable(d, "prod", [](const Point& x) {
    double p = 1.0;
    for (int i = 0; i < x.dim(); ++i) p *= x[i];
    return p;
  });
  e.completely_monotone = true;
  e.bounded_hk = true;
  e.bounded_k = true;
  e.analytic_integral = std::pow(0.5, d);
  e.analytic_hk = std::pow(2.0, d) - 1.0;
  e.exact_hk_ladder = Ladder::uniform(d, 2);
  return e;
}

ZooEntry make_linear(int d) {
  ZooEntry e;
  e.name = "linear";
  e.fn = GridFunction::from_callable(d, "linear", [](const Point& x) {
    double s = 0.0;
    for (int i = 0; i < x.dim(); ++i) s += x[i];
    return s / x.dim();
  });
  e.completely_monotone = true;
  e.bounded_hk = true;
  e.bounded_k = true;
  e.analytic_integral = 0.5;
  e.analytic_hk = 1.0;
  e.exact_hk_ladder = Ladder::uniform(d, 2);
  return e;
}

ZooEntry make_expsum(int d) {
  ZooEntry e;
  e.name = "expsum";
  e.fn = GridFunction::from_callable(d, "expsum", [](const Point& x) {
    double s = 0.0;
    for (int i = 0; i < x.dim(); ++i) s += x[i];
    return std::exp(s) / std::exp(static_cast<double>(x.dim()));
  });
  e.completely_monotone = true;
  e.bounded_hk = true;
  e.bounded_k = true;
  const double edge = (std::exp(1.0) - 1.0) / std::exp(1.0);
  e.analytic_integral = std::pow(edge, d);
  e.analytic_hk = std::pow(1.0 + edge, d) - 1.0;
  e.exact_hk_ladder = Ladder::uniform(d, 2);
  return e;
}

ZooEntry make_box(const std::vector<double>& a) {
  const int d = static_cast<int>(a.size());
  const Point corner{std::span<const double>(a)};
  ZooEntry e;
  std::ostringstream name;
  name << "box:a=";
  for (int i = 0; i < d; ++i) name << (i ? "," : "") << a[static_cast<std::size_t>(i)];
  e.name = name.str();
  const BoxV box = BoxV::anchored(corner, AxisSet::all(d));
  e.fn = GridFunction::from_callable(
      d, e.name, [box](const Point& x) { return box.contains(x) ? 1.0 : 0.0; });
  e.completely_monotone = false;
  e.bounded_hk = true;
  e.bounded_k = true;
  double vol = 1.0;
  for (double ai : a) vol *= ai;
  e.analytic_integral = vol;
  e.analytic_hk = 1.0;
  // Subordinate ladder: breakpoints at the box bounds.
  std::vector<std::vector<double>> breaks;
  for (double ai : a) {
    std::vector<double> axis{0.0};
    if (ai > 0.0 && ai < 1.0) axis.push_back(ai);
    breaks.push_back(std::move(axis));
  }
  e.exact_hk_ladder = Ladder::from_breakpoints(std::move(breaks));
  e.exact_rstar = SimpleFunction(SetFamily{FamilyKind::anchored_boxes, d},
                                 {Term{1.0, SetMember::box(box)}});
  if (d <= 3) {
    std::vector<HalfSpace> hs;
    for (int i = 0; i < d; ++i) {
      std::vector<double> normal(static_cast<std::size_t>(d), 0.0);
      normal[static_cast<std::size_t>(i)] = 1.0;
      hs.push_back(HalfSpace{std::move(normal), a[static_cast<std::size_t>(i)], false});
    }
    e.exact_convex = SimpleFunction(SetFamily{FamilyKind::convex_sets, d},
                                    {Term{1.0, SetMember::convex(ConvexSet::polytope(d, hs))}});
  }
  return e;
}

ZooEntry make_halfplane() {
  ZooEntry e;
  e.name = "halfplane";
  e.fn = GridFunction::from_callable(2, "halfplane",
                                     [](const Point& x) { return x[0] > x[1] ? 1.0 : 0.0; });
  e.completely_monotone = false;
  e.bounded_hk = false;
  e.bounded_k = true;
  e.analytic_integral = 0.5;
  e.exact_convex = SimpleFunction(
      SetFamily{FamilyKind::convex_sets, 2},
      {Term{1.0, SetMember::convex(ConvexSet::polytope(2, {HalfSpace{{-1.0, 1.0}, 0.0, true}}))}});
  return e;
}

ZooEntry make_disc(const std::vector<double>& c, double r) {
  const int d = static_cast<int>(c.size());
  if (d != 2) throw std::invalid_argument("disc: center must be 2-dimensional");
  ZooEntry e;
  std::ostringstream name;
  name << "disc:c=" << c[0] << "," << c[1] << ";r=" << r;
  e.name = name.str();
  const Ball ball{c, r};
  e.fn = GridFunction::from_callable(
      2, e.name, [ball](const Point& x) { return ball.contains(x) ? 1.0 : 0.0; });
  e.completely_monotone = false;
  e.bounded_hk = false;
  e.bounded_k = true;
  if (c[0] - r >= 0.0 && c[0] + r <= 1.0 && c[1] - r >= 0.0 && c[1] + r <= 1.0) {
    e.analytic_integral = M_PI * r * r;
  }
  e.exact_convex = SimpleFunction(SetFamily{FamilyKind::convex_sets, 2},
                                  {Term{1.0, SetMember::convex(ConvexSet::ball(2, ball))}});
  return e;
}

ZooEntry make_step1d(double j) {
  if (!(j > 0.0 && j < 1.0)) throw std::invalid_argument("step1d: jump must be interior");
  ZooEntry e;
  std::ostringstream name;
  name << "step1d:j=" << j;
  e.name = name.str();
  e.fn = GridFunction::from_callable(1, e.name,
                                     [j](const Point& x) { return x[0] >= j ? 1.0 : 0.0; });
  e.completely_monotone = true;
  e.bounded_hk = true;
  e.bounded_k = true;
  e.analytic_integral = 1.0 - j;
  e.analytic_hk = 1.0;
  e.exact_hk_ladder = Ladder::from_breakpoints({{0.0, j}});
  return e;
}

ZooEntry make_randtable(std::uint64_t seed, int cells, int d) {
  ZooEntry e;
  std::ostringstream name;
  name << "randtable:seed=" << seed << ";cells=" << cells << ";d=" << d;
  e.name = name.str();
  const Ladder ladder = Ladder::uniform(d, cells);
  std::size_t total = 1;
  for (int c : ladder.node_counts()) total *= static_cast<std::size_t>(c);
  // Dyadic values (multiples of 2^-10) keep all downstream grid arithmetic
  // exact in double precision.
  std::vector<double> values(total);
  SplitMix rng(seed);
  for (auto& v : values) {
    v = static_cast<double>(static_cast<std::int64_t>(rng.next_below(2049)) - 1024) / 1024.0;
  }
  e.fn = GridFunction::from_table(ladder, std::move(values), e.name);
  e.completely_monotone = false;  // only by coincidence otherwise; treated as generic
  e.bounded_hk = true;
  e.bounded_k = true;
  e.exact_hk_ladder = ladder;
  return e;
}

ZooEntry make_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("table: cannot open '" + path + "'");
  nlohmann::json doc = nlohmann::json::parse(in);
  std::vector<std::vector<double>> breaks;
  for (const auto& axis : doc.at("breakpoints")) {
    breaks.push_back(axis.get<std::vector<double>>());
  }
  auto values = doc.at("values").get<std::vector<double>>();
  ZooEntry e;
  e.name = "table:" + path;
  Ladder ladder = Ladder::from_breakpoints(std::move(breaks));
  e.fn = GridFunction::from_table(ladder, std::move(values), e.name);
  e.completely_monotone = false;
  e.bounded_hk = true;
  e.bounded_k = true;
  e.exact_hk_ladder = ladder;
  return e;
}

}  // namespace

ZooEntry get(const std::string& spec, int default_dim) {
  const auto colon = spec.find(':');
  const std::string base = spec.substr(0, colon);
  const std::string body = colon == std::string::npos ? "" : spec.substr(colon + 1);

  ZooEntry entry;
  std::optional<CmWitnessBox> witness;
  if (base == "prod") {
    entry = make_prod(default_dim);
  } else if (base == "linear") {
    entry = make_linear(default_dim);
  } else if (base == "expsum") {
    entry = make_expsum(default_dim);
  } else if (base == "halfplane") {
    entry = make_halfplane();
    witness = CmWitnessBox{AxisSet::single(1, 2), Point{0.5, 0.25}, Point{0.5, 0.75}};
  } else if (base == "box") {
    std::vector<double> a;
    for (const auto& [k, v] : parse_params(body)) {
      if (k == "a") a = parse_vector(v);
    }
    if (a.empty()) throw std::invalid_argument("box: missing parameter a");
    entry = make_box(a);
    int w = -1;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] < 1.0) w = static_cast<int>(i);
    }
    if (w < 0) {
      entry.completely_monotone = true;  // the box is the whole cube
    } else {
      const int d = static_cast<int>(a.size());
      Point lo = Point::zeros(d);
      Point hi = Point::zeros(d);
      lo[w] = a[static_cast<std::size_t>(w)];
      hi[w] = a[static_cast<std::size_t>(w)] + (1.0 - a[static_cast<std::size_t>(w)]) / 2;
      witness = CmWitnessBox{AxisSet::single(w, d), lo, hi};
    }
  } else if (base == "disc") {
    std::vector<double> c;
    double r = 0.0;
    for (const auto& [k, v] : parse_params(body)) {
      if (k == "c") c = parse_vector(v);
      if (k == "r") r = std::stod(v);
    }
    if (c.size() != 2 || !(r > 0.0)) throw std::invalid_argument("disc: needs c=x,y and r>0");
    entry = make_disc(c, r);
    witness = find_indicator_witness(entry.fn);
  } else if (base == "step1d") {
    double j = 0.5;
    for (const auto& [k, v] : parse_params(body)) {
      if (k == "j") j = std::stod(v);
    }
    entry = make_step1d(j);
  } else if (base == "table") {
    entry = make_table(body);
    witness = std::nullopt;  // generic tables skip the flag verification below
  } else if (base == "randtable") {
    std::uint64_t seed = 1;
    int cells = 4;
    int d = default_dim;
    for (const auto& [k, v] : parse_params(body)) {
      if (k == "seed") seed = std::stoull(v);
      if (k == "cells") cells = std::stoi(v);
      if (k == "d") d = std::stoi(v);
    }
    entry = make_randtable(seed, cells, d);
  } else {
    std::vector<std::string> suggestions;
    for (const auto& name : base_names()) {
      if (name.rfind(base.substr(0, 2), 0) == 0 || base.rfind(name.substr(0, 2), 0) == 0) {
        suggestions.push_back(name);
      }
    }
    if (suggestions.empty()) suggestions = base_names();
    throw NotFoundError("unknown function '" + base + "'", suggestions);
  }

  if (base == "table" || base == "randtable") {
    // Tabulated entries carry no monotonicity claim; nothing to verify.
    return entry;
  }
  verify_entry(entry, witness);
  return entry;
}

std::vector<std::string> list() { return base_names(); }

}  // namespace bv::zoo
