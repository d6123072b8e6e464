// bvkit - variation, simple-function approximation, star discrepancy and
// Koksma-Hlawka certificates for functions on the unit cube.
//
// Every subcommand writes a JSON (or CSV) artifact and prints a one-line
// summary on stdout. Errors go to stderr as JSON. Exit codes: 0 success,
// 2 invalid input, 3 resource limit, 4 certified-inequality violation.

#include <array>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "bv/approx.hpp"
#include "bv/discrepancy.hpp"
#include "bv/errors.hpp"
#include "bv/json_io.hpp"
#include "bv/kernels.hpp"
#include "bv/kh.hpp"
#include "bv/reduction.hpp"
#include "bv/variation.hpp"
#include "bv/zoo.hpp"

namespace {

struct CommonOptions {
  int dim = 2;
  int threads = 1;
  std::uint64_t seed = 0;
  std::string out;
};

void write_artifact(const std::string& path, const bv::Json& doc) {
  bv::write_text_file(path, doc.dump(2) + "\n");
}

std::string csv_field(const std::string& value) {
  if (value.find(',') == std::string::npos && value.find('"') == std::string::npos) return value;
  std::string quoted = "\"";
  for (char c : value) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

// Variation value with provenance for a zoo entry over anchored boxes:
// ladder-exact where the zoo certifies an attaining ladder (constant-sign
// increments or a subordinate step), dvar upper bound next, refined lower
// bound as the informative fallback.
bv::VariationValue rstar_variation(const bv::zoo::ZooEntry& entry) {
  const int d = entry.fn.dim();
  if (entry.exact_hk_ladder) {
    const auto report = bv::hk_on_ladder(entry.fn, *entry.exact_hk_ladder);
    return {report.hk_total, bv::VariationProvenance::ladder_exact};
  }
  const bv::SetFamily family{bv::FamilyKind::anchored_boxes, d};
  const bv::DvarResult dv = bv::dvar_upper(entry.fn, family, 64, entry.exact_rstar);
  if (dv.finite || std::isinf(dv.value)) {
    return {dv.value, bv::VariationProvenance::dvar_upper};
  }
  const auto report = bv::hk_refined(entry.fn, bv::Ladder::uniform(d, 2), 1e-9, 5);
  return {report.hk_total, bv::VariationProvenance::refined_lower_bound};
}

int run_variation(const CommonOptions& common, const std::string& fn_spec, int cells, int refine,
                  double tol) {
  const auto entry = bv::zoo::get(fn_spec, common.dim);
  const bv::Ladder ladder = bv::Ladder::uniform(entry.fn.dim(), cells);
  const bv::VariationReport report = refine > 0
                                         ? bv::hk_refined(entry.fn, ladder, tol, refine)
                                         : bv::hk_on_ladder(entry.fn, ladder);
  const std::string path = common.out.empty() ? "variation.json" : common.out;
  write_artifact(path, bv::to_json(report));
  std::cout << "variation " << entry.name << ": hk_total = " << bv::format_double(report.hk_total)
            << (report.converged ? " (converged)" : "") << " -> " << path << "\n";
  return 0;
}

int run_decompose(const CommonOptions& common, const std::string& fn_spec, int cells) {
  const auto entry = bv::zoo::get(fn_spec, common.dim);
  const bv::Ladder ladder = bv::Ladder::uniform(entry.fn.dim(), cells);
  const bv::MonotoneDecomposition dec = bv::decompose_monotone(entry.fn, ladder);
  const bv::CmResult cm_plus = bv::is_completely_monotone(dec.plus.table());
  const bv::CmResult cm_minus = bv::is_completely_monotone(dec.minus.table());

  bv::Json doc;
  doc["dimension"] = entry.fn.dim();
  doc["cells_per_axis"] = ladder.cells_per_axis();
  bv::Json breaks = bv::Json::array();
  for (int i = 0; i < ladder.dim(); ++i) breaks.push_back(ladder.breakpoints(i));
  doc["breakpoints"] = breaks;
  doc["f_plus"] = dec.plus.table().values;
  doc["f_minus"] = dec.minus.table().values;
  doc["cm_check"] = bv::Json{{"plus", cm_plus.completely_monotone},
                             {"minus", cm_minus.completely_monotone}};
  const std::string path = common.out.empty() ? "decompose.json" : common.out;
  write_artifact(path, doc);
  std::cout << "decompose " << entry.name << ": parts "
            << (cm_plus.completely_monotone && cm_minus.completely_monotone ? "pass" : "FAIL")
            << " the monotonicity re-check -> " << path << "\n";
  return 0;
}

int run_approx(const CommonOptions& common, const std::string& fn_spec, int n, int samples) {
  const auto entry = bv::zoo::get(fn_spec, common.dim);
  const bv::SimpleFunction fn = bv::approximate_monotone(entry.fn, n);
  const int d = entry.fn.dim();

  const bv::PointSet sample_points = bv::generate_halton(samples, d);
  std::vector<double> approx_values(sample_points.points.size());
  bv::eval_batch(fn, sample_points.points, approx_values);
  double max_err = 0.0;
  for (std::size_t j = 0; j < approx_values.size(); ++j) {
    max_err = std::max(max_err, std::abs(entry.fn(sample_points.points[j]) - approx_values[j]));
  }

  bv::Json doc = bv::to_json(fn);
  doc["n"] = n;
  doc["error_bound"] = static_cast<double>(d) / n;
  doc["max_sampled_error"] = max_err;
  doc["samples"] = samples;
  const std::string path = common.out.empty() ? "approx.json" : common.out;
  write_artifact(path, doc);
  std::cout << "approx " << entry.name << " n=" << n << ": " << fn.terms().size()
            << " terms, max sampled error " << bv::format_double(max_err) << " (bound "
            << bv::format_double(static_cast<double>(d) / n) << ") -> " << path << "\n";
  return 0;
}

int run_discrepancy(const CommonOptions& common, const std::string& points_spec) {
  const bv::PointSet ps = bv::parse_pointset_spec(points_spec);
  bv::Json doc;
  double dstar = 0.0;
  try {
    dstar = bv::star_discrepancy_exact(ps);
    doc["dstar"] = dstar;
    doc["method"] = "exact";
  } catch (const bv::ResourceLimitError&) {
    const auto bracket =
        bv::star_discrepancy_grid_bound(ps, bv::default_grid_bound_resolution(ps.dim()));
    dstar = bracket.upper;
    doc["dstar"] = bracket.upper;
    doc["method"] = "grid_bound_upper";
    doc["lower"] = bracket.lower;
  }
  doc["n"] = ps.size();
  doc["d"] = ps.dim();
  const std::string path = common.out.empty() ? "discrepancy.json" : common.out;
  write_artifact(path, doc);
  std::cout << "discrepancy " << ps.label << ": " << bv::format_double(dstar) << " ("
            << doc["method"].get<std::string>() << ") -> " << path << "\n";
  return 0;
}

int run_kh(const CommonOptions& common, const std::string& fn_spec,
           const std::string& points_spec, const std::string& family_name) {
  const auto entry = bv::zoo::get(fn_spec, common.dim);
  const bv::PointSet ps = bv::parse_pointset_spec(points_spec);
  const bv::FamilyKind family = family_name == "k" ? bv::FamilyKind::convex_sets
                                                   : bv::FamilyKind::anchored_boxes;
  bv::VariationValue variation;
  if (family == bv::FamilyKind::convex_sets) {
    const bv::SetFamily fam{bv::FamilyKind::convex_sets, entry.fn.dim()};
    const bv::DvarResult dv = bv::dvar_upper(entry.fn, fam, 64, entry.exact_convex);
    variation = {dv.value, bv::VariationProvenance::dvar_upper};
  } else {
    variation = rstar_variation(entry);
  }
  const bv::KhCertificate cert =
      bv::certify(entry.fn, ps, variation, family, bv::reference_integral(entry));
  const std::string path = common.out.empty() ? "kh.json" : common.out;
  write_artifact(path, bv::to_json(cert));
  std::cout << "kh " << entry.name << " x " << ps.label << ": error "
            << bv::format_double(cert.empirical_error) << " <= bound "
            << bv::format_double(cert.bound) << (cert.sound ? " (sound" : " (informative")
            << (cert.vacuous ? ", vacuous)" : ")") << " -> " << path << "\n";
  return 0;
}

int run_suite(const CommonOptions& common) {
  const std::string dir = common.out.empty() ? "suite_out" : common.out;
  std::filesystem::create_directories(dir);

  std::string csv = "function,pointset,N,d,dstar,variation,provenance,bound,error,sound\n";
  const std::vector<std::string> functions{"prod", "linear", "box:a=0.3,0.7", "expsum"};
  const std::vector<int> sizes{16, 64, 256};

  for (const auto& fn_spec : functions) {
    for (const std::string kind : {"halton", "lattice", "centered"}) {
      for (int n : sizes) {
        const int d = kind == "centered" ? 1 : 2;
        bv::zoo::ZooEntry entry = bv::zoo::get(
            fn_spec == "box:a=0.3,0.7" && d == 1 ? "box:a=0.3" : fn_spec, d);
        bv::PointSet ps;
        if (kind == "halton") {
          ps = bv::generate_halton(n, d);
        } else if (kind == "lattice") {
          const std::array<std::uint64_t, 2> g{1, 7};
          ps = bv::generate_rank1_lattice(n, d, std::span<const std::uint64_t>(g.data(), 2));
        } else {
          ps = bv::generate_centered_regular(n);
        }
        const bv::VariationValue variation = rstar_variation(entry);
        const bv::KhCertificate cert =
            bv::certify(entry.fn, ps, variation, bv::FamilyKind::anchored_boxes,
                        bv::reference_integral(entry));
        csv += csv_field(cert.function) + "," + csv_field(cert.pointset) + "," +
               std::to_string(cert.n) + "," +
               std::to_string(cert.d) + "," + bv::format_double(cert.discrepancy) + "," +
               bv::format_double(cert.variation.value) + "," +
               bv::to_string(cert.variation.provenance) + "," + bv::format_double(cert.bound) +
               "," + bv::format_double(cert.empirical_error) + "," +
               (cert.sound ? "true" : "false") + "\n";
      }
    }
  }
  const std::string path = dir + "/suite.csv";
  bv::write_text_file(path, csv);
  std::cout << "suite: 36 certificates -> " << path << "\n";
  return 0;
}

int dispatch(int argc, char** argv) {
  CLI::App app{"variation / discrepancy / Koksma-Hlawka toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  CommonOptions common;
  app.add_option("--d", common.dim, "dimension for function families without an intrinsic one")
      ->capture_default_str();
  app.add_option("--threads", common.threads, "worker threads (results are identical at any "
                                              "count)")
      ->capture_default_str();
  app.add_option("--seed", common.seed, "seed recorded for randomized inputs");
  app.add_option("--out", common.out, "output path (directory for `suite`)");

  std::string fn_spec;
  std::string points_spec;
  std::string family_name = "rstar";
  int cells = 4;
  int refine = 0;
  double tol = 1e-6;
  int n = 8;
  int samples = 10000;

  auto* variation = app.add_subcommand("variation", "ladder variation report");
  variation->add_option("--fn", fn_spec, "function spec")->required();
  variation->add_option("--cells", cells, "cells per axis of the initial ladder")
      ->capture_default_str();
  variation->add_option("--refine", refine, "number of factor-2 refinements");
  variation->add_option("--tol", tol, "refinement convergence tolerance")->capture_default_str();

  auto* decompose = app.add_subcommand("decompose", "split into completely monotone parts");
  decompose->add_option("--fn", fn_spec, "function spec")->required();
  decompose->add_option("--cells", cells, "cells per axis")->capture_default_str();

  auto* approx = app.add_subcommand("approx", "anchored-box approximation of a completely "
                                              "monotone function");
  approx->add_option("--fn", fn_spec, "function spec")->required();
  approx->add_option("--n", n, "range resolution (error bound d/n)")->capture_default_str();
  approx->add_option("--check-samples", samples, "sample count for the error report")
      ->capture_default_str();

  auto* discrepancy = app.add_subcommand("discrepancy", "star discrepancy of a point set");
  discrepancy->add_option("--points", points_spec, "point set spec or CSV path")->required();

  auto* kh = app.add_subcommand("kh", "Koksma-Hlawka certificate");
  kh->add_option("--fn", fn_spec, "function spec")->required();
  kh->add_option("--points", points_spec, "point set spec or CSV path")->required();
  kh->add_option("--family", family_name, "variation family: rstar | k")->capture_default_str();

  auto* suite = app.add_subcommand("suite", "full certificate table (CSV)");

  app.parse(argc, argv);
  bv::set_thread_count(common.threads);

  if (variation->parsed()) return run_variation(common, fn_spec, cells, refine, tol);
  if (decompose->parsed()) return run_decompose(common, fn_spec, cells);
  if (approx->parsed()) return run_approx(common, fn_spec, n, samples);
  if (discrepancy->parsed()) return run_discrepancy(common, points_spec);
  if (kh->parsed()) return run_kh(common, fn_spec, points_spec, family_name);
  if (suite->parsed()) return run_suite(common);
  return 2;
}

void emit_error(const std::string& kind, const std::string& message) {
  bv::Json doc;
  doc["error"] = bv::Json{{"kind", kind}, {"message", message}};
  std::cerr << doc.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return 0;  // --help
    emit_error("invalid-argument", e.what());
    return 2;
  } catch (const bv::ResourceLimitError& e) {
    emit_error("resource-limit", e.what());
    return 3;
  } catch (const bv::CertifiedInequalityError& e) {
    emit_error("certified-inequality-violation", e.what());
    return 4;
  } catch (const bv::NotFoundError& e) {
    emit_error("not-found", e.what());
    return 2;
  } catch (const bv::UnsupportedOperationError& e) {
    emit_error("unsupported-operation", e.what());
    return 2;
  } catch (const bv::PreconditionError& e) {
    emit_error("precondition-violation", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    emit_error("invalid-argument", e.what());
    return 2;
  } catch (const std::exception& e) {
    emit_error("internal-error", e.what());
    return 1;
  }
}
