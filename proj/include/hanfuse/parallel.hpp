#pragma once

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hanfuse {

// Execution mode for the data-parallel kernels (neighbor scans, batch
// gradients, corpus tagging). Serial is the reference path; the parallel
// path must produce bit-identical results because every loop iteration
// writes only its own output slot.
enum class Exec { Serial, Parallel };

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

// body(i) for i in [0, n); iterations must be independent.
template <typename F>
void parallel_for(int n, Exec exec, F&& body) {
#ifdef _OPENMP
  if (exec == Exec::Parallel && n > 1) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
#else
  (void)exec;
#endif
  for (int i = 0; i < n; ++i) body(i);
}

// Variant for iterations of uneven cost (sentences, training batches).
template <typename F>
void parallel_for_dynamic(int n, Exec exec, F&& body) {
#ifdef _OPENMP
  if (exec == Exec::Parallel && n > 1) {
#pragma omp parallel for schedule(dynamic, 1)
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
#else
  (void)exec;
#endif
  for (int i = 0; i < n; ++i) body(i);
}

}  // namespace hanfuse
