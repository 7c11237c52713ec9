#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace affind {

/// Execution switch threaded through the heavy checks. The serial path is
/// the reference implementation; the OpenMP path must produce identical
/// results (tests compare the two byte-for-byte).
struct RunOptions {
  bool parallel = false;
  int threads = 0;  // 0 = OpenMP default
};

/// Index-space parallel loop. Results must be written to preallocated
/// per-index slots so that aggregation order never depends on scheduling.
template <class Fn>
void parallel_for(std::size_t n, const RunOptions& opt, Fn&& fn) {
#ifdef _OPENMP
  if (opt.parallel) {
    const int nt = opt.threads > 0 ? opt.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(nt)
    for (long long i = 0; i < static_cast<long long>(n); ++i)
      fn(static_cast<std::size_t>(i));
    return;
  }
#endif
  for (std::size_t i = 0; i < n; ++i) fn(i);
}

}  // namespace affind
