#include "bv/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace bv {

namespace {

Json number_or_inf(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

Json to_json(const SetMember& m) {
  Json set;
  if (std::holds_alternative<BoxV>(m.shape)) {
    const BoxV& b = std::get<BoxV>(m.shape);
    set["kind"] = "box";
    set["a"] = std::vector<double>(b.a.coords().begin(), b.a.coords().end());
    set["b"] = std::vector<double>(b.b.coords().begin(), b.b.coords().end());
    std::vector<int> closed;
    for (int i = 0; i < b.dim(); ++i) {
      if (b.closed_at_b.contains(i)) closed.push_back(i + 1);
    }
    set["closed_axes"] = closed;
  } else {
    const ConvexSet& c = std::get<ConvexSet>(m.shape);
    set["kind"] = "convex";
    if (c.is_empty_marker()) set["empty"] = true;
    Json hs = Json::array();
    for (const auto& h : c.halfspaces()) {
      Json one;
      one["normal"] = h.normal;
      one["offset"] = h.offset;
      if (h.strict) one["strict"] = true;
      hs.push_back(one);
    }
    set["halfspaces"] = hs;
    if (c.ball_part()) {
      set["disc"] = Json{{"center", c.ball_part()->center}, {"radius", c.ball_part()->radius}};
    }
  }
  if (m.complemented) set["complement"] = true;
  return set;
}

SetMember member_from_json(const Json& doc, const SetFamily& family) {
  const bool complemented = doc.value("complement", false);
  const std::string kind = doc.at("kind");
  if (kind == "box") {
    const auto a = doc.at("a").get<std::vector<double>>();
    const auto b = doc.at("b").get<std::vector<double>>();
    std::uint32_t mask = 0;
    for (int axis : doc.at("closed_axes").get<std::vector<int>>()) mask |= 1u << (axis - 1);
    return SetMember{BoxV(Point{std::span<const double>(a)}, Point{std::span<const double>(b)},
                          AxisSet(mask, static_cast<int>(b.size()))),
                     complemented};
  }
  if (kind == "convex") {
    if (doc.value("empty", false)) {
      return SetMember{ConvexSet::empty_set(family.dim), complemented};
    }
    std::vector<HalfSpace> hs;
    for (const auto& one : doc.value("halfspaces", Json::array())) {
      hs.push_back(HalfSpace{one.at("normal").get<std::vector<double>>(),
                             one.at("offset").get<double>(), one.value("strict", false)});
    }
    if (doc.contains("disc")) {
      Ball ball{doc["disc"].at("center").get<std::vector<double>>(),
                doc["disc"].at("radius").get<double>()};
      return SetMember{ConvexSet::ball_polytope(family.dim, std::move(ball), std::move(hs)),
                       complemented};
    }
    return SetMember{ConvexSet::polytope(family.dim, std::move(hs)), complemented};
  }
  throw std::invalid_argument("simple function JSON: unknown set kind '" + kind + "'");
}

}  // namespace

Json to_json(const VariationReport& report) {
  Json doc;
  doc["dimension"] = report.dimension;
  doc["ladder_cells_per_axis"] = report.cells_per_axis;
  doc["vitali"] = number_or_inf(report.vitali);
  Json faces;
  for (const auto& [axes, value] : report.faces) faces[axes.to_string()] = value;
  doc["faces"] = faces;
  doc["hk_total"] = number_or_inf(report.hk_total);
  doc["converged"] = report.converged;
  Json trace = Json::array();
  for (const auto& entry : report.trace) {
    trace.push_back(Json{{"cells_per_axis", entry.cells_per_axis}, {"hk_total", entry.hk_total}});
  }
  doc["trace"] = trace;
  return doc;
}

Json to_json(const SimpleFunction& s) {
  Json doc;
  doc["family"] = s.family().kind == FamilyKind::anchored_boxes ? "rstar" : "k";
  doc["dimension"] = s.family().dim;
  Json terms = Json::array();
  for (const auto& term : s.terms()) {
    terms.push_back(Json{{"alpha", term.alpha}, {"set", to_json(term.set)}});
  }
  doc["terms"] = terms;
  return doc;
}

SimpleFunction simple_function_from_json(const Json& doc) {
  SetFamily family;
  const std::string kind = doc.at("family");
  family.kind = kind == "rstar" ? FamilyKind::anchored_boxes : FamilyKind::convex_sets;
  family.dim = doc.at("dimension").get<int>();
  std::vector<Term> terms;
  for (const auto& t : doc.at("terms")) {
    terms.push_back(Term{t.at("alpha").get<double>(), member_from_json(t.at("set"), family)});
  }
  return SimpleFunction(family, std::move(terms));
}

Json to_json(const KhCertificate& cert) {
  Json doc;
  doc["function"] = cert.function;
  doc["pointset"] = cert.pointset;
  doc["n"] = cert.n;
  doc["d"] = cert.d;
  doc["discrepancy"] = cert.discrepancy;
  doc["discrepancy_method"] = cert.discrepancy_method;
  doc["variation"] =
      Json{{"value", number_or_inf(cert.variation.value)},
           {"provenance", to_string(cert.variation.provenance)}};
  doc["bound"] = number_or_inf(cert.bound);
  doc["empirical_error"] = cert.empirical_error;
  doc["reference"] = Json{
      {"value", cert.reference.value},
      {"provenance",
       cert.reference.provenance == IntegralProvenance::analytic ? "analytic" : "quadrature"},
      {"error_estimate", cert.reference.error_estimate}};
  doc["sound"] = cert.sound;
  doc["vacuous"] = cert.vacuous;
  return doc;
}

Json to_json(const DvarResult& result) {
  Json doc;
  doc["value"] = number_or_inf(result.value);
  doc["finite"] = result.finite;
  Json trace = Json::array();
  for (const auto& entry : result.trace) {
    trace.push_back(
        Json{{"param", entry.param}, {"vs", entry.vs}, {"sup_gap", entry.sup_gap}});
  }
  doc["trace"] = trace;
  return doc;
}

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write '" + path + "'");
  out << contents;
}

}  // namespace bv
