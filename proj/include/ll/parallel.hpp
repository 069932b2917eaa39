#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ll::par {

enum class Policy { Serial, OpenMP };

// Worker cap: LL_THREADS if set, otherwise the OpenMP default.
int worker_cap();

// Runs body(i) for i in [0, n). The OpenMP policy parallelizes over i; the
// serial policy is the reference implementation kept for testing. Bodies must
// only write to per-index slots so both policies produce identical results.
template <typename F>
void for_each_index(std::size_t n, Policy policy, F&& body) {
#ifdef _OPENMP
  if (policy == Policy::OpenMP) {
    int cap = worker_cap();
#pragma omp parallel for schedule(dynamic, 8) num_threads(cap)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
      body(static_cast<std::size_t>(i));
    }
    return;
  }
#else
  (void)policy;
#endif
  for (std::size_t i = 0; i < n; ++i) body(i);
}

// Deterministic gather: results indexed by i, reduced later in index order.
template <typename T, typename F>
std::vector<T> map_indexed(std::size_t n, Policy policy, F&& fn) {
  std::vector<T> out(n);
  for_each_index(n, policy, [&](std::size_t i) { out[i] = fn(i); });
  return out;
}

Policy default_policy();

}  // namespace ll::par
