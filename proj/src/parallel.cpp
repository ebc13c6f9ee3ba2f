#include "wlab/parallel.hpp"

#include <cstdlib>

namespace wlab::par {

namespace {
int initial_threads() {
  if (const char* env = std::getenv("WILLMORE_LAB_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

int& thread_slot() {
  static int n = initial_threads();
  return n;
}
} // namespace

mode& execution_mode() {
#ifdef _OPENMP
  static mode m = mode::openmp;
#else
  static mode m = mode::serial;
#endif
  return m;
}

int thread_count() { return thread_slot(); }

void set_thread_count(int n) {
  if (n > 0) thread_slot() = n;
}

} // namespace wlab::par
