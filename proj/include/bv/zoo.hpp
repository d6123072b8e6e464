#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bv/grid_function.hpp"
#include "bv/ladder.hpp"
#include "bv/simple_fn.hpp"

namespace bv::zoo {

// A named test function with known structure. The positive flags are
// re-verified on a finite ladder at registration (a necessary-condition
// check); a false monotonicity flag carries an explicit witness box that is
// also verified.
struct ZooEntry {
  std::string name;  // canonical spec string
  GridFunction fn;
  bool completely_monotone = false;
  bool bounded_hk = false;
  bool bounded_k = false;
  std::optional<double> analytic_integral;
  std::optional<double> analytic_hk;
  // Ladder on which hk_on_ladder attains the exact Hardy-Krause value
  // (constant-sign increments or a subordinate step function).
  std::optional<Ladder> exact_hk_ladder;
  std::optional<SimpleFunction> exact_rstar;
  std::optional<SimpleFunction> exact_convex;
};

// Parses the function mini-language:
//   "prod" | "linear" | "expsum" | "halfplane" | "box:a=0.3,0.7"
//   | "disc:c=0.5,0.5;r=0.3" | "step1d:j=0.5" | "table:path.json"
//   | "randtable:seed=1;cells=4;d=2"
// default_dim applies to the families without an intrinsic dimension.
// Unknown names raise NotFoundError with suggestions.
ZooEntry get(const std::string& spec, int default_dim = 2);

std::vector<std::string> list();

}  // namespace bv::zoo
