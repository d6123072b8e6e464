#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace bv {

// Global worker-thread count for the parallel fill loops. Results are
// bit-identical at every setting: threads only fill disjoint slots of
// pre-sized buffers, and every reduction runs in a fixed serial order.
void set_thread_count(int threads);
int thread_count();

// Runs fn(begin, end) over a fixed chunking of [0, n). Chunk boundaries
// depend only on n and the configured thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

namespace detail {

inline double neumaier_block(std::span<const double> xs) {
  double sum = 0.0;
  double comp = 0.0;
  for (double x : xs) {
    double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }
  return sum + comp;
}

}  // namespace detail

// Deterministic pairwise (tree) reduction with compensated accumulation at
// the leaves. The split points are a function of the length alone, so the
// result is reproducible across runs and thread counts.
inline double pairwise_sum(std::span<const double> xs) {
  constexpr std::size_t kLeaf = 64;
  if (xs.size() <= kLeaf) return detail::neumaier_block(xs);
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

inline double pairwise_abs_sum(std::span<const double> xs) {
  std::vector<double> tmp(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) tmp[i] = std::abs(xs[i]);
  return pairwise_sum(tmp);
}

inline double pairwise_mean(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  return pairwise_sum(xs) / static_cast<double>(xs.size());
}

}  // namespace bv
