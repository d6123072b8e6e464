#include "doctest.h"

#include "bv/delta.hpp"
#include "bv/geometry.hpp"
#include "bv/ladder.hpp"
#include "bv/rng.hpp"

using namespace bv;

namespace {

GridFunction prod2() {
  return GridFunction::from_callable(2, "x1*x2", [](const Point& x) { return x[0] * x[1]; });
}

Ladder random_ladder(int d, int cells, std::uint64_t seed) {
  SplitMix rng(seed);
  std::vector<std::vector<double>> axes;
  for (int i = 0; i < d; ++i) {
    std::vector<double> axis{0.0};
    for (int k = 1; k < cells; ++k) axis.push_back(rng.next_double() * 0.999);
    std::sort(axis.begin(), axis.end());
    axis.erase(std::unique(axis.begin(), axis.end()), axis.end());
    axes.push_back(std::move(axis));
  }
  return Ladder::from_breakpoints(std::move(axes));
}

}  // namespace

TEST_CASE("splice definitional cases") {
  const Point a{0.2, 0.3};
  const Point b{0.7, 0.9};
  CHECK(splice(a, b, AxisSet::single(0, 2)) == Point{0.2, 0.9});
  CHECK(splice(a, b, AxisSet::none(2)) == b);
  CHECK(splice(a, b, AxisSet::all(2)) == a);
  CHECK_THROWS_AS(splice(a, Point{0.5}, AxisSet::all(2)), std::invalid_argument);
}

TEST_CASE("splice symmetry: a^u:b^-u == b^-u:a^u") {
  SplitMix rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 1 + static_cast<int>(rng.next_below(4));
    Point a = Point::zeros(d);
    Point b = Point::zeros(d);
    for (int i = 0; i < d; ++i) {
      a[i] = rng.next_double();
      b[i] = rng.next_double();
    }
    const AxisSet u(static_cast<std::uint32_t>(rng.next_below(1u << d)), d);
    CHECK(splice(a, b, u) == splice(b, a, u.complement()));
  }
}

TEST_CASE("box delta on x1*x2 matches the hand-expanded sum") {
  const GridFunction f = prod2();
  const double v = box_delta(f, Point{0.2, 0.3}, Point{0.7, 0.9});
  CHECK(v == doctest::Approx(0.30).epsilon(1e-12));  // 0.63 - 0.18 - 0.21 + 0.06
}

TEST_CASE("box delta of a constant vanishes") {
  const GridFunction c = GridFunction::from_callable(3, "c", [](const Point&) { return 4.2; });
  CHECK(box_delta(c, Point{0.1, 0.2, 0.3}, Point{0.5, 0.6, 0.7}) == doctest::Approx(0.0));
}

TEST_CASE("box delta of the coordinate product over the whole cube is 1") {
  for (int d = 1; d <= 4; ++d) {
    const GridFunction f = GridFunction::from_callable(d, "prod", [](const Point& x) {
      double p = 1.0;
      for (int i = 0; i < x.dim(); ++i) p *= x[i];
      return p;
    });
    CHECK(box_delta(f, Point::zeros(d), Point::ones(d)) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("box delta requires a <= b") {
  CHECK_THROWS_AS(box_delta(prod2(), Point{0.8, 0.3}, Point{0.7, 0.9}), std::invalid_argument);
}

TEST_CASE("subset delta cases") {
  const GridFunction f = prod2();
  const Point a{0.2, 0.3};
  const Point b{0.7, 0.9};
  CHECK(box_delta_on(f, a, b, AxisSet::none(2)) == doctest::Approx(f(b)));
  CHECK(box_delta_on(f, a, b, AxisSet::all(2)) == doctest::Approx(box_delta(f, a, b)));
  // Two-term sum by hand: f(0.7,0.9) - f(0.2,0.9) = 0.45.
  CHECK(box_delta_on(f, a, b, AxisSet::single(0, 2)) == doctest::Approx(0.45).epsilon(1e-12));
}

TEST_CASE("delta is multilinear in f") {
  SplitMix rng(11);
  const GridFunction f = prod2();
  const GridFunction g =
      GridFunction::from_callable(2, "g", [](const Point& x) { return x[0] + 3.0 * x[1]; });
  for (int trial = 0; trial < 20; ++trial) {
    const double alpha = rng.next_double() * 4 - 2;
    const double beta = rng.next_double() * 4 - 2;
    Point a{rng.next_double() * 0.5, rng.next_double() * 0.5};
    Point b{a[0] + rng.next_double() * 0.5, a[1] + rng.next_double() * 0.5};
    const GridFunction combo = GridFunction::from_callable(
        2, "combo", [=](const Point& x) { return alpha * f(x) + beta * g(x); });
    CHECK(box_delta(combo, a, b) ==
          doctest::Approx(alpha * box_delta(f, a, b) + beta * box_delta(g, a, b))
              .epsilon(1e-12));
  }
}

TEST_CASE("ladder successor") {
  const Ladder l = Ladder::uniform(2, 2);  // breakpoints {0, 0.5} per axis
  CHECK(l.successor(Point{0.5, 0.0}) == Point{1.0, 0.5});
  CHECK(l.successor(Point{0.5, 0.5}) == Point{1.0, 1.0});
  CHECK_THROWS_AS(l.successor(Point{0.25, 0.0}), std::invalid_argument);

  const Ladder m = Ladder::uniform(1, 8);
  for (int k = 0; k < 8; ++k) {
    const Point y{static_cast<double>(k) / 8};
    const Point next = m.successor(y);
    CHECK(next[0] == doctest::Approx(static_cast<double>(k + 1) / 8));
  }
}

TEST_CASE("ladder validation") {
  CHECK_THROWS_AS(Ladder::from_breakpoints({{0.5, 0.7}}), std::invalid_argument);  // no 0
  CHECK_THROWS_AS(Ladder::from_breakpoints({{0.0, 1.0}}), std::invalid_argument);  // 1 excluded
  CHECK_THROWS_AS(Ladder::from_breakpoints({{0.0, 0.3, 0.3}}), std::invalid_argument);
}

TEST_CASE("face ladders") {
  const Ladder l = Ladder::uniform(2, 2);
  const FaceLadder empty = face_ladder(l, AxisSet::none(2));
  CHECK(empty.point_count() == 1);
  CHECK(empty.point(0) == Point{1.0, 1.0});

  const FaceLadder full = face_ladder(l, AxisSet::all(2));
  CHECK(full.point_count() == l.cell_count());

  const FaceLadder first = face_ladder(l, AxisSet::single(0, 2));
  REQUIRE(first.point_count() == 2);
  CHECK(first.point(0) == Point{0.0, 1.0});
  CHECK(first.point(1) == Point{0.5, 1.0});
  CHECK(first.successor(Point{0.0, 1.0}) == Point{0.5, 1.0});
  CHECK(first.successor(Point{0.5, 1.0}) == Point{1.0, 1.0});
}

TEST_CASE("refinement keeps old breakpoints and splits evenly") {
  const Ladder l = Ladder::from_breakpoints({{0.0, 0.5}});
  const Ladder fine = l.refined(2);
  CHECK(fine.breakpoints(0) == std::vector<double>{0.0, 0.25, 0.5, 0.75});

  const Ladder single = Ladder::uniform(1, 1);
  CHECK(single.refined(4).breakpoints(0) == std::vector<double>{0.0, 0.25, 0.5, 0.75});

  const Ladder r = random_ladder(2, 5, 3);
  const Ladder rf = r.refined(3);
  for (int axis = 0; axis < 2; ++axis) {
    for (double y : r.breakpoints(axis)) {
      const auto& fb = rf.breakpoints(axis);
      CHECK(std::find(fb.begin(), fb.end(), y) != fb.end());
    }
  }
}

TEST_CASE("telescoping: cell deltas sum to the global delta") {
  const GridFunction f = GridFunction::from_callable(2, "mix", [](const Point& x) {
    return x[0] * x[1] + 0.25 * x[0] - x[1] * x[1];
  });
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    const Ladder l = random_ladder(2, 6, seed);
    double total = 0.0;
    const auto ys = face_ladder(l, AxisSet::all(2)).points();
    for (const Point& y : ys) total += box_delta(f, y, l.successor(y));
    CHECK(total == doctest::Approx(box_delta(f, Point::zeros(2), Point::ones(2)))
                       .epsilon(1e-10));
  }
}

TEST_CASE("empty box contains nothing") {
  // a_i == b_i on a half-open axis makes the box empty.
  const BoxV box(Point{0.3, 0.2}, Point{0.3, 0.8}, AxisSet::single(1, 2));
  CHECK(box.empty());
  SplitMix rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    CHECK_FALSE(box.contains(Point{rng.next_double(), rng.next_double()}));
  }
  CHECK_FALSE(box.contains(Point{0.3, 0.2}));
}

TEST_CASE("half-open membership") {
  const BoxV box = BoxV::anchored(Point{0.5, 0.5}, AxisSet::all(2));
  CHECK(box.contains(Point{0.5, 0.5}));
  const BoxV open = BoxV::anchored(Point{0.5, 0.5}, AxisSet::none(2));
  CHECK_FALSE(open.contains(Point{0.5, 0.5}));
  CHECK(open.contains(Point{0.49, 0.0}));
}
