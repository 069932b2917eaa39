#include "ll/parallel.hpp"

#include <cstdlib>
#include <string>

namespace ll::par {

int worker_cap() {
#ifdef _OPENMP
  int cap = omp_get_max_threads();
#else
  int cap = 1;
#endif
  if (const char* env = std::getenv("LL_THREADS")) {
    int requested = std::atoi(env);
    if (requested >= 1 && requested < cap) cap = requested;
  }
  return cap;
}

Policy default_policy() {
#ifdef _OPENMP
  return Policy::OpenMP;
#else
  return Policy::Serial;
#endif
}

}  // namespace ll::par
