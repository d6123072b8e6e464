#include <cmath>

#include "doctest.h"

#include "bv/errors.hpp"
#include "bv/json_io.hpp"
#include "bv/kh.hpp"
#include "bv/variation.hpp"
#include "bv/zoo.hpp"

using namespace bv;

TEST_CASE("empirical error basics") {
  const auto prod = zoo::get("prod", 2);
  const PointSet halton = generate_halton(64, 2);
  const double err = empirical_error(prod.fn, halton, 0.25);
  CHECK(err < 0.05);
  // Deterministic summation: the exact value is a frozen regression number.
  CHECK(err == doctest::Approx(0.016300154320987664).epsilon(1e-15));

  const GridFunction c = GridFunction::from_callable(2, "c", [](const Point&) { return 0.125; });
  CHECK(empirical_error(c, halton, 0.125) == 0.0);

  PointSet single;
  single.label = "corner";
  single.points.push_back(Point{1.0, 1.0});
  CHECK(empirical_error(prod.fn, single, 0.25) == doctest::Approx(0.75));
}

TEST_CASE("reference integrals") {
  CHECK(reference_integral(zoo::get("prod", 3)).value == doctest::Approx(0.125));
  CHECK(reference_integral(zoo::get("box:a=0.3,0.7", 2)).value == doctest::Approx(0.21));
  CHECK(reference_integral(zoo::get("halfplane")).value == doctest::Approx(0.5));
  const auto quad = reference_integral(
      zoo::get("disc:c=0.5,0.5;r=0.7", 2));  // clipped by the cube: no closed form here
  CHECK(quad.provenance == IntegralProvenance::quadrature);
  CHECK(quad.error_estimate < 1e-2);
  // Tabulated entries integrate their step extension exactly.
  const auto table = zoo::get("randtable:seed=5;cells=4;d=2", 2);
  const auto ref = reference_integral(table);
  CHECK(ref.provenance == IntegralProvenance::analytic);
  const auto check = empirical_error(table.fn, generate_halton(4096, 2), ref.value);
  CHECK(check < 0.05);
}

TEST_CASE("sound certificate for a completely monotone integrand") {
  const auto prod = zoo::get("prod", 2);
  const VariationValue var{3.0, VariationProvenance::ladder_exact};
  const KhCertificate cert = certify(prod.fn, generate_halton(16, 2), var,
                                     FamilyKind::anchored_boxes, reference_integral(prod));
  CHECK(cert.sound);
  CHECK_FALSE(cert.vacuous);
  CHECK(cert.bound == doctest::Approx(cert.discrepancy * 3.0));
  CHECK(cert.empirical_error <= cert.bound + 1e-12);
  CHECK(cert.discrepancy_method == "exact");
}

TEST_CASE("infinite variation yields a vacuous but sound certificate") {
  const auto hp = zoo::get("halfplane");
  const VariationValue var{std::numeric_limits<double>::infinity(),
                           VariationProvenance::dvar_upper};
  const KhCertificate cert = certify(hp.fn, generate_halton(16, 2), var,
                                     FamilyKind::anchored_boxes, reference_integral(hp));
  CHECK(cert.sound);
  CHECK(cert.vacuous);
  CHECK(std::isinf(cert.bound));
}

TEST_CASE("convex-family variation is refused against star discrepancy") {
  const auto hp = zoo::get("halfplane");
  const VariationValue var{1.0, VariationProvenance::dvar_upper};
  CHECK_THROWS_AS(certify(hp.fn, generate_halton(16, 2), var, FamilyKind::convex_sets,
                          reference_integral(hp)),
                  std::invalid_argument);
}

TEST_CASE("lower-bound variation marks the certificate unsound") {
  const auto hp = zoo::get("halfplane");
  const VariationReport rep = hk_refined(hp.fn, Ladder::uniform(2, 1), 1e-9, 3);
  const VariationValue var{rep.hk_total, VariationProvenance::refined_lower_bound};
  const KhCertificate cert = certify(hp.fn, generate_halton(16, 2), var,
                                     FamilyKind::anchored_boxes, reference_integral(hp));
  CHECK_FALSE(cert.sound);
  // Unsound certificates never throw, whatever the numbers say.
}

TEST_CASE("a violated certified inequality throws") {
  const auto prod = zoo::get("prod", 2);
  // Deliberately absurd "upper bound" far below the true variation.
  const VariationValue bogus{1e-9, VariationProvenance::dvar_upper};
  CHECK_THROWS_AS(certify(prod.fn, generate_halton(16, 2), bogus, FamilyKind::anchored_boxes,
                          reference_integral(prod)),
                  CertifiedInequalityError);
}

TEST_CASE("halton bounds shrink with N for a fixed integrand") {
  const auto prod = zoo::get("prod", 2);
  const VariationValue var{3.0, VariationProvenance::ladder_exact};
  double previous = std::numeric_limits<double>::infinity();
  for (int n : {16, 64, 256}) {
    const KhCertificate cert = certify(prod.fn, generate_halton(n, 2), var,
                                       FamilyKind::anchored_boxes, reference_integral(prod));
    CHECK(cert.bound <= previous + 1e-15);
    previous = cert.bound;
  }
}

TEST_CASE("certificate JSON is deterministic") {
  const auto prod = zoo::get("prod", 2);
  const VariationValue var{3.0, VariationProvenance::ladder_exact};
  const auto make = [&] {
    return to_json(certify(prod.fn, generate_halton(16, 2), var, FamilyKind::anchored_boxes,
                           reference_integral(prod)))
        .dump(2);
  };
  CHECK(make() == make());
}
