#include "bv/kernels.hpp"

#include <cstdlib>
#include <mutex>
#include <stdexcept>
#include <string>

namespace bv::kernels {

namespace {

Backend g_backend = Backend::scalar;
bool g_initialized = false;
std::mutex g_mutex;

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

void init_locked() {
  if (g_initialized) return;
  Backend pick = cpu_has_avx2() ? Backend::avx2 : Backend::scalar;
  if (const char* env = std::getenv("BVKIT_SIMD")) {
    const std::string v(env);
    if (v == "scalar") {
      pick = Backend::scalar;
    } else if (v == "avx2") {
      if (!cpu_has_avx2()) throw std::invalid_argument("BVKIT_SIMD=avx2: CPU lacks AVX2");
      pick = Backend::avx2;
    } else if (!v.empty() && v != "auto") {
      throw std::invalid_argument("BVKIT_SIMD: unknown backend '" + v + "'");
    }
  }
  g_backend = pick;
  g_initialized = true;
}

}  // namespace

Backend active_backend() {
  std::lock_guard lock(g_mutex);
  init_locked();
  return g_backend;
}

bool backend_available(Backend b) {
  return b == Backend::scalar || (b == Backend::avx2 && cpu_has_avx2());
}

void set_backend(Backend b) {
  if (!backend_available(b)) {
    throw std::invalid_argument("kernel backend '" + backend_name(b) +
                                "' not supported on this CPU");
  }
  std::lock_guard lock(g_mutex);
  g_backend = b;
  g_initialized = true;
}

void autodetect_backend() {
  std::lock_guard lock(g_mutex);
  g_initialized = false;
  init_locked();
}

std::string backend_name(Backend b) { return b == Backend::avx2 ? "avx2" : "scalar"; }

void cell_deltas(std::span<const double> values, std::span<const int> node_counts,
                 std::span<double> out) {
#if defined(__x86_64__) || defined(_M_X64)
  if (active_backend() == Backend::avx2) {
    detail::cell_deltas_avx2(values, node_counts, out);
    return;
  }
#endif
  detail::cell_deltas_scalar(values, node_counts, out);
}

BoxCounts count_in_anchored_box(const PointsSoA& pts, std::span<const double> corner,
                                std::span<const bool> closed_allowed) {
#if defined(__x86_64__) || defined(_M_X64)
  if (active_backend() == Backend::avx2) {
    return detail::count_in_anchored_box_avx2(pts, corner, closed_allowed);
  }
#endif
  return detail::count_in_anchored_box_scalar(pts, corner, closed_allowed);
}

void accumulate_box_indicator(const PointsSoA& pts, std::span<const double> b,
                              std::uint32_t closed_mask, double alpha, std::span<double> acc) {
#if defined(__x86_64__) || defined(_M_X64)
  if (active_backend() == Backend::avx2) {
    detail::accumulate_box_indicator_avx2(pts, b, closed_mask, alpha, acc);
    return;
  }
#endif
  detail::accumulate_box_indicator_scalar(pts, b, closed_mask, alpha, acc);
}

}  // namespace bv::kernels
