#pragma once

#include <cstddef>
#include <span>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace wlab::par {

enum class mode { serial, openmp };

/// Global execution mode. The OpenMP path and the serial path must produce
/// bit-identical results; tests compare them directly.
mode& execution_mode();

int thread_count();
void set_thread_count(int n);

/// Apply f(i) for i in [0, n). Independent iterations, each writing its own
/// output slot; no reduction happens inside.
template <class F>
void for_each_index(std::size_t n, F&& f) {
#ifdef _OPENMP
  if (execution_mode() == mode::openmp) {
#pragma omp parallel for schedule(dynamic, 4) num_threads(thread_count())
    for (long long i = 0; i < static_cast<long long>(n); ++i) f(static_cast<std::size_t>(i));
    return;
  }
#endif
  for (std::size_t i = 0; i < n; ++i) f(i);
}

/// Pairwise (tree) summation. Summation order is fixed by the element order,
/// independent of thread count, so parallel producers stay deterministic as
/// long as they fill slots by index.
template <class T>
T pairwise_sum(std::span<const T> xs) {
  const std::size_t n = xs.size();
  if (n == 0) return T{};
  if (n <= 8) {
    T s = xs[0];
    for (std::size_t i = 1; i < n; ++i) s += xs[i];
    return s;
  }
  const std::size_t h = n / 2;
  return pairwise_sum(xs.subspan(0, h)) + pairwise_sum(xs.subspan(h));
}

template <class T>
T pairwise_sum(const std::vector<T>& xs) {
  return pairwise_sum(std::span<const T>(xs.data(), xs.size()));
}

} // namespace wlab::par
