#pragma once

#include <cstdint>
#include <functional>

namespace witnesskit {

// Every parallel kernel in the library takes an Exec switch and must produce
// byte-identical results in both modes. Exec::serial is the reference path
// used by the tests and the benchmark baseline.
enum class Exec { serial, parallel };

// Worker count for Exec::parallel: min(hardware, WITNESSKIT_THREADS) when the
// environment variable is set to a positive integer, hardware otherwise.
int worker_count();

// Runs body(i) for i in [0, n). Under Exec::parallel the iterations are
// distributed over OpenMP threads; the body must only write to per-index
// slots or thread-local state so that scheduling cannot change the result.
void parallel_for(std::int64_t n, Exec exec, const std::function<void(std::int64_t)>& body);

}  // namespace witnesskit
