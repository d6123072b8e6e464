#include <algorithm>
#include <cstdio>
#include <filesystem>

#include "doctest.h"

#include "bv/discrepancy.hpp"
#include "bv/errors.hpp"
#include "bv/rng.hpp"

using namespace bv;

namespace {

PointSet from_coords(std::vector<std::vector<double>> pts) {
  PointSet ps;
  ps.label = "inline";
  for (auto& p : pts) ps.points.emplace_back(std::span<const double>(p));
  return ps;
}

}  // namespace

TEST_CASE("1-d exact values by hand") {
  CHECK(star_discrepancy_exact(from_coords({{0.25}, {0.75}})) == doctest::Approx(0.25));
  CHECK(star_discrepancy_exact(from_coords({{0.5}})) == doctest::Approx(0.5));
  // A point at 0 is inside every box [0,t), t > 0; sup is 1 in the limit t->0.
  CHECK(star_discrepancy_exact(from_coords({{0.0}})) == doctest::Approx(1.0));
  // A point at 1 is in no half-open anchored box.
  CHECK(star_discrepancy_exact(from_coords({{1.0}})) == doctest::Approx(1.0));
}

TEST_CASE("2-d exact value for the centered single point") {
  CHECK(star_discrepancy_exact(from_coords({{0.5, 0.5}})) == doctest::Approx(0.75));
}

TEST_CASE("exact search enforces its budget") {
  const PointSet big = generate_uniform_random(300, 2, 9);
  CHECK_THROWS_AS(star_discrepancy_exact(big), ResourceLimitError);
  const PointSet deep = generate_uniform_random(10, 4, 9);
  CHECK_THROWS_AS(star_discrepancy_exact(deep), ResourceLimitError);
}

TEST_CASE("grid bound brackets the exact value") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const int d = 1 + static_cast<int>(seed % 2);
    const int n = 5 + static_cast<int>(splitmix64(seed) % 40);
    const PointSet ps = generate_uniform_random(n, d, seed);
    const double exact = star_discrepancy_exact(ps);
    const DiscrepancyBracket bracket = star_discrepancy_grid_bound(ps, 64);
    CHECK(bracket.lower <= exact + 1e-12);
    CHECK(exact <= bracket.upper + 1e-12);
    CHECK(bracket.upper - bracket.lower == doctest::Approx(static_cast<double>(d) / 64));
  }
}

TEST_CASE("doubling m halves the bracket width") {
  const PointSet ps = generate_uniform_random(50, 2, 4);
  const auto b1 = star_discrepancy_grid_bound(ps, 32);
  const auto b2 = star_discrepancy_grid_bound(ps, 64);
  CHECK(b1.upper - b1.lower == doctest::Approx(2.0 * (b2.upper - b2.lower)));
  CHECK(b2.upper - b2.lower == doctest::Approx(2.0 / 64));
}

TEST_CASE("halton opens with the base-2 radical inverses") {
  const PointSet ps = generate_halton(3, 1);
  CHECK(ps.points[0][0] == doctest::Approx(0.5));
  CHECK(ps.points[1][0] == doctest::Approx(0.25));
  CHECK(ps.points[2][0] == doctest::Approx(0.75));
}

TEST_CASE("centered points have discrepancy 1/(2N)") {
  const PointSet ps = generate_centered_regular(4);
  REQUIRE(ps.points.size() == 4);
  CHECK(ps.points[0][0] == doctest::Approx(0.125));
  CHECK(ps.points[3][0] == doctest::Approx(0.875));
  for (int n : {1, 2, 4, 8, 16}) {
    CHECK(star_discrepancy_exact(generate_centered_regular(n)) ==
          doctest::Approx(1.0 / (2.0 * n)));
  }
}

TEST_CASE("random generation is seed-reproducible") {
  const PointSet a = generate_uniform_random(100, 3, 1234);
  const PointSet b = generate_uniform_random(100, 3, 1234);
  const PointSet c = generate_uniform_random(100, 3, 1235);
  REQUIRE(a.points.size() == b.points.size());
  bool identical = true;
  bool differs = false;
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    identical = identical && a.points[i] == b.points[i];
    differs = differs || !(a.points[i] == c.points[i]);
  }
  CHECK(identical);
  CHECK(differs);
}

TEST_CASE("discrepancy is permutation invariant") {
  PointSet ps = generate_halton(32, 2);
  const double reference = star_discrepancy_exact(ps);
  std::reverse(ps.points.begin(), ps.points.end());
  CHECK(star_discrepancy_exact(ps) == reference);
  std::rotate(ps.points.begin(), ps.points.begin() + 7, ps.points.end());
  CHECK(star_discrepancy_exact(ps) == reference);
}

TEST_CASE("basic bounds: 0 <= D* <= 1, and D* >= 1/(2N) in 1-d") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const int n = 1 + static_cast<int>(splitmix64(seed) % 60);
    const PointSet ps = generate_uniform_random(n, 1, seed);
    const double v = star_discrepancy_exact(ps);
    CHECK(v >= 1.0 / (2.0 * n) - 1e-15);
    CHECK(v <= 1.0);
  }
  for (const auto& ps : {generate_halton(64, 2), generate_centered_regular(16)}) {
    const double v = star_discrepancy_exact(ps);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
}

TEST_CASE("lattice points wrap mod 1") {
  const std::array<std::uint64_t, 2> g{1, 7};
  const PointSet ps = generate_rank1_lattice(8, 2, std::span<const std::uint64_t>(g.data(), 2));
  REQUIRE(ps.points.size() == 8);
  CHECK(ps.points[0] == Point{0.0, 0.0});
  CHECK(ps.points[1][0] == doctest::Approx(1.0 / 8));
  CHECK(ps.points[1][1] == doctest::Approx(7.0 / 8));
  CHECK(ps.points[2][1] == doctest::Approx(6.0 / 8));  // 14/8 mod 1
}

TEST_CASE("pointset specs parse") {
  CHECK(parse_pointset_spec("halton:n=16,d=2").points.size() == 16);
  CHECK(parse_pointset_spec("centered:n=4,d=1").points.size() == 4);
  CHECK(parse_pointset_spec("random:n=10,d=3,seed=5").seed == 5);
  const PointSet lat = parse_pointset_spec("lattice:n=16,d=2,g=1,5");
  CHECK(lat.points[1][1] == doctest::Approx(5.0 / 16));
  CHECK_THROWS_AS(parse_pointset_spec("halton:d=2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_pointset_spec("centered:n=4,d=2"), std::invalid_argument);
}

TEST_CASE("csv round trip") {
  const PointSet ps = generate_uniform_random(25, 2, 77);
  const std::string path = (std::filesystem::temp_directory_path() / "bvkit_pts.csv").string();
  write_pointset_csv(ps, path);
  const PointSet back = read_pointset_csv(path);
  REQUIRE(back.points.size() == ps.points.size());
  CHECK(back.seed == ps.seed);
  for (std::size_t i = 0; i < ps.points.size(); ++i) {
    CHECK(back.points[i] == ps.points[i]);  // %.17g round-trips doubles exactly
  }
  std::filesystem::remove(path);
}
