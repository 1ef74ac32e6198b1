#include "witnesskit/parallel.hpp"

#include <cstdlib>
#include <string>
#include <thread>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace witnesskit {

int worker_count() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw < 1) hw = 1;
  const char* cap = std::getenv("WITNESSKIT_THREADS");
  if (cap != nullptr) {
    try {
      int n = std::stoi(cap);
      if (n >= 1 && n < hw) return n;
    } catch (...) {
    }
  }
  return hw;
}

void parallel_for(std::int64_t n, Exec exec, const std::function<void(std::int64_t)>& body) {
  if (n <= 0) return;
#ifdef _OPENMP
  if (exec == Exec::parallel) {
    int workers = worker_count();
#pragma omp parallel for schedule(static) num_threads(workers)
    for (std::int64_t i = 0; i < n; ++i) body(i);
    return;
  }
#else
  (void)exec;
#endif
  for (std::int64_t i = 0; i < n; ++i) body(i);
}

}  // namespace witnesskit
