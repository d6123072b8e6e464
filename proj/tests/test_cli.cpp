// Exercises the command-line contract: artifacts, exit codes, determinism.
// argv[1] is the path to the bvkit binary.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "bv/json_io.hpp"

namespace {

int failures = 0;

void check(bool ok, const std::string& what) {
  std::printf("%s  %s\n", ok ? "ok  " : "FAIL", what.c_str());
  if (!ok) ++failures;
}

int run(const std::string& cmd) {
  const int status = std::system((cmd + " > /dev/null 2> /dev/null").c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: bvkit_cli_tests <path-to-bvkit>\n";
    return 2;
  }
  const std::string exe = argv[1];
  const auto dir = std::filesystem::temp_directory_path() / "bvkit_cli_tests";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const std::string out = dir.string();

  check(run(exe + " variation --fn prod --cells 4 --d 2 --out " + out + "/v.json") == 0,
        "variation exits 0");
  check(slurp(dir / "v.json").find("\"hk_total\": 3.0") != std::string::npos,
        "variation artifact records hk_total 3");

  check(run(exe + " approx --fn prod --n 8 --d 2 --check-samples 2000 --out " + out +
            "/a.json") == 0,
        "approx exits 0");
  check(slurp(dir / "a.json").find("max_sampled_error") != std::string::npos,
        "approx artifact reports the sampled error");
  try {
    // The artifact is a loadable simple function that tracks the integrand.
    const auto doc = bv::Json::parse(slurp(dir / "a.json"));
    const bv::SimpleFunction fn = bv::simple_function_from_json(doc);
    double max_err = 0.0;
    for (int i = 0; i <= 20; ++i) {
      for (int j = 0; j <= 20; ++j) {
        const bv::Point x{i / 20.0, j / 20.0};
        max_err = std::max(max_err, std::abs(x[0] * x[1] - fn.eval(x)));
      }
    }
    check(max_err <= 0.25 + 1e-12, "approx artifact round-trips and meets its bound");
  } catch (const std::exception& e) {
    check(false, std::string("approx artifact failed to load: ") + e.what());
  }

  check(run(exe + " discrepancy --points centered:n=4,d=1 --out " + out + "/d.json") == 0,
        "discrepancy exits 0");
  check(slurp(dir / "d.json").find("0.125") != std::string::npos,
        "discrepancy artifact records 1/8");

  {
    std::ofstream csv(dir / "pts.csv");
    csv << "# label=two-points\n0.25\n0.75\n";
  }
  check(run(exe + " discrepancy --points " + out + "/pts.csv --out " + out + "/dc.json") == 0,
        "discrepancy accepts CSV point files");
  check(slurp(dir / "dc.json").find("0.25") != std::string::npos,
        "CSV input yields the hand value 0.25");

  check(run(exe + " kh --fn prod --points halton:n=16,d=2 --out " + out + "/kh.json") == 0,
        "kh exits 0");
  check(slurp(dir / "kh.json").find("\"sound\": true") != std::string::npos,
        "kh certificate is sound");

  check(run(exe + " decompose --fn \"randtable:seed=3;cells=4;d=2\" --out " + out +
            "/dec.json") == 0,
        "decompose exits 0");

  // Exit code contract.
  check(run(exe + " variation --fn nosuchfn --cells 4 --out " + out + "/x.json") == 2,
        "unknown function exits 2");
  check(run(exe + " discrepancy --points random:n=2000,d=3 --out " + out + "/x.json") == 0,
        "over-budget exact search falls back to the grid bracket");
  check(run(exe + " approx --fn halfplane --out " + out + "/x.json") == 2,
        "approx on a non-monotone function exits 2");
  check(run(exe + " kh --fn halfplane --points halton:n=16,d=2 --family k --out " + out +
            "/x.json") == 2,
        "convex-family kh pairing is refused with exit 2");
  check(run(exe + " nosuchcommand") == 2, "unknown subcommand exits 2");

  // Determinism: identical artifacts across runs and thread counts.
  check(run(exe + " kh --fn expsum --points lattice:n=64,d=2 --threads 1 --out " + out +
            "/kh1.json") == 0 &&
            run(exe + " kh --fn expsum --points lattice:n=64,d=2 --threads 4 --out " + out +
                "/kh2.json") == 0,
        "kh runs at both thread counts");
  check(slurp(dir / "kh1.json") == slurp(dir / "kh2.json"),
        "kh artifacts are byte-identical across thread counts");

  std::filesystem::remove_all(dir);
  if (failures) std::printf("%d CLI check(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
