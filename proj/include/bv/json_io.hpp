#pragma once

#include <string>

#include "json.hpp"

#include "bv/approx.hpp"
#include "bv/kh.hpp"
#include "bv/simple_fn.hpp"
#include "bv/variation.hpp"

namespace bv {

// All artifacts serialize through ordered_json with nlohmann's shortest
// round-trip double formatting: identical inputs give byte-identical files.
// Infinite values are encoded as the string "inf".
using Json = nlohmann::ordered_json;

Json to_json(const VariationReport& report);
Json to_json(const SimpleFunction& s);
Json to_json(const KhCertificate& cert);
Json to_json(const DvarResult& result);

SimpleFunction simple_function_from_json(const Json& doc);

std::string format_double(double v);  // %.17g, "inf"/"-inf" for infinities

void write_text_file(const std::string& path, const std::string& contents);

}  // namespace bv
