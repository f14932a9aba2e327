#pragma once

#include <cstddef>
#include <exception>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace exciton {

/// Worker count used when a caller passes 0: the EXCITON_WORKERS environment
/// variable if set, otherwise the hardware thread count.
int default_workers();

/// Serial reference path: fn(i) for i in [0, n), results in index order.
template <class T, class Fn>
std::vector<T> serial_map(std::size_t n, Fn&& fn) {
  std::vector<T> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(fn(i));
  return out;
}

/// OpenMP-parallel map over independent grid points. Results are assembled
/// in index order, so output is identical to serial_map regardless of
/// scheduling. The first failing index (lowest i) wins error reporting.
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t n, int workers, Fn&& fn) {
  if (workers <= 0) workers = default_workers();
#ifdef _OPENMP
  if (workers > 1 && n > 1) {
    std::vector<T> out(n);
    std::exception_ptr error;
    std::size_t error_index = n;
#pragma omp parallel for schedule(dynamic) num_threads(workers)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
      const std::size_t idx = static_cast<std::size_t>(i);
      try {
        out[idx] = fn(idx);
      } catch (...) {
#pragma omp critical(exciton_parallel_map_error)
        if (idx < error_index) {
          error_index = idx;
          error = std::current_exception();
        }
      }
    }
    if (error) std::rethrow_exception(error);
    return out;
  }
#endif
  (void)workers;
  return serial_map<T>(n, fn);
}

}  // namespace exciton
