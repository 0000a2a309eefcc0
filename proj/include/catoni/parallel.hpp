#pragma once

#include <cstddef>
#include <exception>
#include <limits>
#include <mutex>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace catoni {

/// How a data-parallel loop is executed. `serial` is the plain-loop reference kept
/// for testing; `openmp` runs the same body over `workers` threads (0 = runtime
/// default). Bodies write to per-index slots, so both produce identical results.
struct Execution {
  enum class Mode { serial, openmp };
  Mode mode = Mode::openmp;
  int workers = 0;

  static Execution serial_reference() { return {Mode::serial, 1}; }
  static Execution with_workers(int w) { return {Mode::openmp, w}; }
};

namespace kernels {

template <class Body>
void for_each_index_serial(std::size_t count, Body&& body) {
  for (std::size_t i = 0; i < count; ++i) body(i);
}

/// OpenMP loop over [0, count). An exception thrown by any iteration is rethrown
/// after the loop; when several fail, the one with the lowest index wins.
template <class Body>
void for_each_index_parallel(std::size_t count, int workers, Body&& body) {
#ifdef _OPENMP
  std::mutex guard;
  std::exception_ptr failure;
  std::size_t failed_index = std::numeric_limits<std::size_t>::max();
  const int threads = workers > 0 ? workers : omp_get_max_threads();
  const auto n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic, 4) num_threads(threads)
  for (long long i = 0; i < n; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    try {
      body(idx);
    } catch (...) {
      std::lock_guard lock(guard);
      if (idx < failed_index) {
        failed_index = idx;
        failure = std::current_exception();
      }
    }
  }
  if (failure) std::rethrow_exception(failure);
#else
  (void)workers;
  for_each_index_serial(count, std::forward<Body>(body));
#endif
}

template <class Body>
void for_each_index(std::size_t count, const Execution& exec, Body&& body) {
  if (exec.mode == Execution::Mode::serial) {
    for_each_index_serial(count, std::forward<Body>(body));
  } else {
    for_each_index_parallel(count, exec.workers, std::forward<Body>(body));
  }
}

}  // namespace kernels
}  // namespace catoni
