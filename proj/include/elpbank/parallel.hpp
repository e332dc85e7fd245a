#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <exception>
#include <functional>
#include <numbers>
#include <thread>
#include <vector>

namespace elpbank {

/// Runs fn(i) for i in [0, n). With parallel set, indices are split across hardware threads;
/// callers write results into per-index slots so the outcome does not depend on scheduling.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn, bool parallel) {
  const std::size_t workers = parallel ? std::max<std::size_t>(1, std::thread::hardware_concurrency()) : 1;
  if (workers == 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < n; i += workers) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

/// Uniform grid on [-pi, pi)^dim with `points` samples per axis, flattened.
inline std::size_t grid_size(std::size_t dim, std::size_t points) {
  std::size_t total = 1;
  for (std::size_t i = 0; i < dim; ++i) total *= points;
  return total;
}

inline std::vector<double> grid_point(std::size_t dim, std::size_t points, std::size_t index) {
  std::vector<double> w(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const std::size_t k = index % points;
    index /= points;
    w[i] = -std::numbers::pi + 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(points);
  }
  return w;
}

}  // namespace elpbank
