#pragma once

#include <string>

#include "bv/discrepancy.hpp"
#include "bv/grid_function.hpp"
#include "bv/simple_fn.hpp"
#include "bv/zoo.hpp"

namespace bv {

enum class VariationProvenance {
  ladder_exact,        // attained on a ladder (subordinate step / constant-sign increments)
  refined_lower_bound, // unconverged refinement trace; informative only
  dvar_upper,          // certified representation upper bound
};

std::string to_string(VariationProvenance p);

struct VariationValue {
  double value = 0.0;  // may be +infinity
  VariationProvenance provenance = VariationProvenance::refined_lower_bound;
  bool is_upper_bound() const { return provenance != VariationProvenance::refined_lower_bound; }
};

enum class IntegralProvenance { analytic, quadrature };

struct ReferenceIntegral {
  double value = 0.0;
  IntegralProvenance provenance = IntegralProvenance::analytic;
  double error_estimate = 0.0;  // only meaningful for quadrature
};

struct KhCertificate {
  std::string function;
  std::string pointset;
  int n = 0;
  int d = 0;
  double discrepancy = 0.0;
  std::string discrepancy_method;  // "exact" or "grid_bound_upper"
  VariationValue variation;
  double bound = 0.0;
  double empirical_error = 0.0;
  ReferenceIntegral reference;
  bool sound = false;    // bound certified: variation provenance is an upper bound
  bool vacuous = false;  // bound is infinite
};

// |mean of f over the points - ref| with deterministic summation.
double empirical_error(const GridFunction& f, const PointSet& ps, double ref);

// Analytic value for closed-form zoo entries, else tensorized composite
// midpoint quadrature on a 1024^min(d,2)-cell grid with a refinement-based
// error estimate.
ReferenceIntegral reference_integral(const zoo::ZooEntry& entry);

// Builds the certificate and hard-checks the certified inequality: a sound
// certificate with empirical_error > bound + 1e-12 throws
// CertifiedInequalityError. Star discrepancy only certifies variation over
// anchored boxes; convex-family variation is refused (invalid_argument).
KhCertificate certify(const GridFunction& f, const PointSet& ps, const VariationValue& variation,
                      FamilyKind variation_family, const ReferenceIntegral& ref);

}  // namespace bv
