#include "bv/simple_fn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bv/errors.hpp"
#include "bv/kernels.hpp"
#include "bv/reduction.hpp"

namespace bv {

bool HalfSpace::contains(const Point& x) const {
  if (normal.size() != static_cast<std::size_t>(x.dim())) {
    throw std::invalid_argument("HalfSpace: dimension mismatch");
  }
  double dot = 0.0;
  for (int i = 0; i < x.dim(); ++i) dot += normal[static_cast<std::size_t>(i)] * x[i];
  return strict ? dot < offset : dot <= offset;
}

bool Ball::contains(const Point& x) const {
  if (center.size() != static_cast<std::size_t>(x.dim())) {
    throw std::invalid_argument("Ball: dimension mismatch");
  }
  double dist2 = 0.0;
  for (int i = 0; i < x.dim(); ++i) {
    const double diff = x[i] - center[static_cast<std::size_t>(i)];
    dist2 += diff * diff;
  }
  return dist2 <= radius * radius;
}

ConvexSet ConvexSet::cube(int dim) {
  ConvexSet out;
  out.dim_ = dim;
  return out;
}

ConvexSet ConvexSet::empty_set(int dim) {
  ConvexSet out;
  out.dim_ = dim;
  out.empty_ = true;
  return out;
}

ConvexSet ConvexSet::polytope(int dim, std::vector<HalfSpace> halfspaces) {
  if (halfspaces.size() > static_cast<std::size_t>(kMaxHalfSpaces)) {
    throw std::invalid_argument("ConvexSet: more than " + std::to_string(kMaxHalfSpaces) +
                                " half-spaces");
  }
  for (const auto& h : halfspaces) {
    if (h.normal.size() != static_cast<std::size_t>(dim)) {
      throw std::invalid_argument("ConvexSet: half-space dimension mismatch");
    }
  }
  ConvexSet out;
  out.dim_ = dim;
  out.halfspaces_ = std::move(halfspaces);
  return out;
}

ConvexSet ConvexSet::ball(int dim, Ball b) { return ball_polytope(dim, std::move(b), {}); }

ConvexSet ConvexSet::ball_polytope(int dim, Ball b, std::vector<HalfSpace> halfspaces) {
  if (dim > 3) throw std::invalid_argument("ConvexSet: balls supported for d <= 3");
  if (b.center.size() != static_cast<std::size_t>(dim)) {
    throw std::invalid_argument("ConvexSet: ball dimension mismatch");
  }
  ConvexSet out = polytope(dim, std::move(halfspaces));
  out.ball_ = std::move(b);
  return out;
}

bool ConvexSet::contains(const Point& x) const {
  if (x.dim() != dim_) throw std::invalid_argument("ConvexSet: dimension mismatch");
  if (empty_) return false;
  for (const auto& h : halfspaces_) {
    if (!h.contains(x)) return false;
  }
  if (ball_ && !ball_->contains(x)) return false;
  return true;
}

ConvexSet ConvexSet::intersect(const ConvexSet& other) const {
  if (dim_ != other.dim_) throw std::invalid_argument("ConvexSet: dimension mismatch");
  if (empty_ || other.empty_) return empty_set(dim_);
  if (ball_ && other.ball_ && !(*ball_ == *other.ball_)) {
    throw UnsupportedOperationError(
        "ConvexSet: intersection of two distinct balls is outside the represented class");
  }
  std::vector<HalfSpace> hs = halfspaces_;
  for (const auto& h : other.halfspaces_) {
    if (std::find(hs.begin(), hs.end(), h) == hs.end()) hs.push_back(h);
  }
  if (hs.size() > static_cast<std::size_t>(kMaxHalfSpaces)) {
    throw UnsupportedOperationError("ConvexSet: intersection exceeds " +
                                    std::to_string(kMaxHalfSpaces) + " half-spaces");
  }
  ConvexSet out = polytope(dim_, std::move(hs));
  out.ball_ = ball_ ? ball_ : other.ball_;
  return out;
}

int SetMember::dim() const {
  return std::holds_alternative<BoxV>(shape) ? std::get<BoxV>(shape).dim()
                                             : std::get<ConvexSet>(shape).dim();
}

bool SetMember::contains(const Point& x) const {
  const bool inside = std::holds_alternative<BoxV>(shape) ? std::get<BoxV>(shape).contains(x)
                                                          : std::get<ConvexSet>(shape).contains(x);
  return complemented ? !inside : inside;
}

namespace {

bool box_is_cube(const BoxV& b) {
  if (!b.closed_at_b.full()) {
    // Half-open axes at 1 still cover [0,1) there, not the full cube.
    return false;
  }
  for (int i = 0; i < b.dim(); ++i) {
    if (b.a[i] != 0.0 || b.b[i] != 1.0) return false;
  }
  return true;
}

}  // namespace

bool SetMember::is_empty() const {
  const bool base_empty = std::holds_alternative<BoxV>(shape)
                              ? std::get<BoxV>(shape).empty()
                              : std::get<ConvexSet>(shape).is_empty_marker();
  const bool base_cube = std::holds_alternative<BoxV>(shape)
                             ? box_is_cube(std::get<BoxV>(shape))
                             : std::get<ConvexSet>(shape).is_cube();
  return complemented ? base_cube : base_empty;
}

bool SetMember::is_cube() const {
  const bool base_empty = std::holds_alternative<BoxV>(shape)
                              ? std::get<BoxV>(shape).empty()
                              : std::get<ConvexSet>(shape).is_empty_marker();
  const bool base_cube = std::holds_alternative<BoxV>(shape)
                             ? box_is_cube(std::get<BoxV>(shape))
                             : std::get<ConvexSet>(shape).is_cube();
  return complemented ? base_empty : base_cube;
}

SetMember SetMember::complement_of(SetMember m) {
  m.complemented = !m.complemented;
  return m;
}

namespace {

void check_member(const SetFamily& family, const SetMember& m) {
  if (m.dim() != family.dim) {
    throw std::invalid_argument("SimpleFunction: set dimension mismatch");
  }
  const bool is_box = std::holds_alternative<BoxV>(m.shape);
  if (family.kind == FamilyKind::anchored_boxes) {
    if (!is_box) {
      throw std::invalid_argument("SimpleFunction: convex set in an anchored-box family");
    }
    const BoxV& b = std::get<BoxV>(m.shape);
    for (int i = 0; i < b.dim(); ++i) {
      if (b.a[i] != 0.0) {
        throw std::invalid_argument("SimpleFunction: anchored-box member must have a = 0");
      }
    }
  } else {
    if (is_box) {
      throw std::invalid_argument("SimpleFunction: box member in a convex family");
    }
    if (family.dim > 3) {
      throw std::invalid_argument("SimpleFunction: convex families support d <= 3");
    }
  }
}

}  // namespace

SimpleFunction::SimpleFunction(SetFamily family, std::vector<Term> terms)
    : family_(family), terms_(std::move(terms)) {
  for (const auto& term : terms_) check_member(family_, term.set);
}

double SimpleFunction::eval(const Point& x) const {
  std::vector<double> hit;
  hit.reserve(terms_.size());
  for (const auto& term : terms_) {
    if (term.set.contains(x)) hit.push_back(term.alpha);
  }
  return pairwise_sum(hit);
}

SimpleFunction add(const SimpleFunction& s, const SimpleFunction& t) {
  if (!(s.family() == t.family())) {
    throw std::invalid_argument("add: simple functions over different families");
  }
  std::vector<Term> terms(s.terms().begin(), s.terms().end());
  terms.insert(terms.end(), t.terms().begin(), t.terms().end());
  return SimpleFunction(s.family(), std::move(terms));
}

SimpleFunction scale(double c, const SimpleFunction& s) {
  std::vector<Term> terms(s.terms().begin(), s.terms().end());
  for (auto& term : terms) term.alpha *= c;
  return SimpleFunction(s.family(), std::move(terms));
}

namespace {

// Closed at the intersection bound only where the tighter operand is closed.
BoxV intersect_boxes(const BoxV& x, const BoxV& y) {
  const int d = x.dim();
  Point b = Point::zeros(d);
  std::uint32_t closed = 0;
  for (int i = 0; i < d; ++i) {
    const bool xc = x.closed_at_b.contains(i);
    const bool yc = y.closed_at_b.contains(i);
    bool c;
    if (x.b[i] < y.b[i]) {
      b[i] = x.b[i];
      c = xc;
    } else if (y.b[i] < x.b[i]) {
      b[i] = y.b[i];
      c = yc;
    } else {
      b[i] = x.b[i];
      c = xc && yc;
    }
    if (c) closed |= 1u << i;
  }
  return BoxV::anchored(b, AxisSet(closed, d));
}

}  // namespace

SimpleFunction multiply(const SimpleFunction& s, const SimpleFunction& t) {
  if (!(s.family() == t.family())) {
    throw std::invalid_argument("multiply: simple functions over different families");
  }
  if (!s.family().intersection_closed()) {
    throw UnsupportedOperationError("multiply: family is not closed under intersection");
  }
  std::vector<Term> terms;
  terms.reserve(s.terms().size() * t.terms().size());
  for (const auto& a : s.terms()) {
    for (const auto& b : t.terms()) {
      if (a.set.complemented || b.set.complemented) {
        throw UnsupportedOperationError(
            "multiply: complemented members do not intersect within the family");
      }
      SetMember prod =
          s.family().kind == FamilyKind::anchored_boxes
              ? SetMember::box(
                    intersect_boxes(std::get<BoxV>(a.set.shape), std::get<BoxV>(b.set.shape)))
              : SetMember::convex(std::get<ConvexSet>(a.set.shape)
                                      .intersect(std::get<ConvexSet>(b.set.shape)));
      terms.push_back({a.alpha * b.alpha, std::move(prod)});
    }
  }
  return SimpleFunction(s.family(), std::move(terms));
}

int complexity_upper(const SetMember& m) {
  if (m.is_empty() || m.is_cube()) return 0;
  return 1;
}

int complexity_upper(std::span<const SetMember> algebraic_sum) {
  if (algebraic_sum.size() == 1) return complexity_upper(algebraic_sum.front());
  return static_cast<int>(algebraic_sum.size());
}

SimpleFunction merge_duplicates(const SimpleFunction& s) {
  std::vector<Term> merged;
  for (const auto& term : s.terms()) {
    auto it = std::find_if(merged.begin(), merged.end(),
                           [&](const Term& t) { return t.set == term.set; });
    if (it == merged.end()) {
      merged.push_back(term);
    } else {
      it->alpha += term.alpha;
    }
  }
  return SimpleFunction(s.family(), std::move(merged));
}

ComplexityAccount complexity_account(const SimpleFunction& s) {
  const SimpleFunction merged = merge_duplicates(s);
  ComplexityAccount account;
  std::vector<double> contributions;
  contributions.reserve(merged.terms().size());
  for (const auto& term : merged.terms()) {
    account.term_bounds.push_back(complexity_upper(term.set));
    contributions.push_back(std::abs(term.alpha) *
                            static_cast<double>(account.term_bounds.back()));
  }
  account.vs_upper = pairwise_sum(contributions);
  return account;
}

double vs_upper(const SimpleFunction& s) { return complexity_account(s).vs_upper; }

namespace {

// Representative coordinates hitting every membership pattern of the stored
// anchored boxes: each bound value exactly, midpoints between consecutive
// critical values, and the endpoints.
std::vector<double> axis_representatives(const SimpleFunction& s, int axis) {
  std::vector<double> critical{0.0, 1.0};
  for (const auto& term : s.terms()) {
    critical.push_back(std::get<BoxV>(term.set.shape).b[axis]);
  }
  std::sort(critical.begin(), critical.end());
  critical.erase(std::unique(critical.begin(), critical.end()), critical.end());
  std::vector<double> reps = critical;
  for (std::size_t i = 0; i + 1 < critical.size(); ++i) {
    reps.push_back(critical[i] + (critical[i + 1] - critical[i]) / 2.0);
  }
  std::sort(reps.begin(), reps.end());
  return reps;
}

Extrema extrema_boxes_exact(const SimpleFunction& s) {
  const int d = s.dim();
  std::vector<std::vector<double>> reps;
  std::size_t total = 1;
  for (int i = 0; i < d; ++i) {
    reps.push_back(axis_representatives(s, i));
    total *= reps.back().size();
  }
  Extrema out;
  out.exact = true;
  bool first = true;
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    Point p = Point::zeros(d);
    for (int i = d - 1; i >= 0; --i) {
      const auto& r = reps[static_cast<std::size_t>(i)];
      p[i] = r[rem % r.size()];
      rem /= r.size();
    }
    const double v = s.eval(p);
    if (first) {
      out.min = out.max = v;
      first = false;
    } else {
      out.min = std::min(out.min, v);
      out.max = std::max(out.max, v);
    }
  }
  return out;
}

Extrema extrema_sampled(const SimpleFunction& s) {
  // Low-discrepancy scan plus the corners; documented as a sampled extremum.
  const int d = s.dim();
  Extrema out;
  out.exact = false;
  bool first = true;
  auto consider = [&](const Point& p) {
    const double v = s.eval(p);
    if (first) {
      out.min = out.max = v;
      first = false;
    } else {
      out.min = std::min(out.min, v);
      out.max = std::max(out.max, v);
    }
  };
  constexpr int kSamples = 1 << 13;
  static constexpr int primes[kMaxDim] = {2, 3, 5, 7, 11, 13, 17, 19};
  for (int k = 1; k <= kSamples; ++k) {
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
    consider(p);
  }
  for (std::uint32_t corner = 0; corner < (1u << d); ++corner) {
    Point p = Point::zeros(d);
    for (int i = 0; i < d; ++i) p[i] = ((corner >> i) & 1u) ? 1.0 : 0.0;
    consider(p);
  }
  return out;
}

}  // namespace

Extrema extrema(const SimpleFunction& s) {
  if (s.terms().empty()) return {0.0, 0.0, true};
  bool plain_boxes = s.family().kind == FamilyKind::anchored_boxes;
  for (const auto& term : s.terms()) plain_boxes = plain_boxes && !term.set.complemented;
  if (plain_boxes && s.terms().size() <= 64) return extrema_boxes_exact(s);
  return extrema_sampled(s);
}

double sup_abs(const SimpleFunction& s) {
  const Extrema e = extrema(s);
  return std::max(std::abs(e.min), std::abs(e.max));
}

double inf_abs(const SimpleFunction& s) {
  const Extrema e = extrema(s);
  if (e.min <= 0.0 && e.max >= 0.0) return 0.0;
  return std::min(std::abs(e.min), std::abs(e.max));
}

void eval_batch(const SimpleFunction& s, std::span<const Point> points, std::span<double> out) {
  if (out.size() != points.size()) throw std::invalid_argument("eval_batch: bad output size");
  std::fill(out.begin(), out.end(), 0.0);
  const int d = s.dim();

  const bool boxes = s.family().kind == FamilyKind::anchored_boxes;
  bool kernel_ok = boxes;
  for (const auto& term : s.terms()) kernel_ok = kernel_ok && !term.set.complemented;
  if (kernel_ok) {
    kernels::PointsSoA soa;
    soa.dim = d;
    soa.count = static_cast<std::int64_t>(points.size());
    soa.axis.assign(static_cast<std::size_t>(d), std::vector<double>(points.size()));
    for (std::size_t j = 0; j < points.size(); ++j) {
      for (int i = 0; i < d; ++i) {
        soa.axis[static_cast<std::size_t>(i)][j] = points[j][i];
      }
    }
    for (const auto& term : s.terms()) {
      const BoxV& b = std::get<BoxV>(term.set.shape);
      std::vector<double> upper(static_cast<std::size_t>(d));
      for (int i = 0; i < d; ++i) upper[static_cast<std::size_t>(i)] = b.b[i];
      kernels::accumulate_box_indicator(soa, upper, b.closed_at_b.mask(), term.alpha, out);
    }
    return;
  }
  for (std::size_t j = 0; j < points.size(); ++j) out[j] = s.eval(points[j]);
}

}  // namespace bv
