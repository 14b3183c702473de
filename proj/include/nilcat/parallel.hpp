#pragma once

#include <cstddef>

namespace nilcat::parallel {

// Thread budget for parallel kernels: NILCAT_THREADS if set to a positive integer,
// otherwise the OpenMP default. Always at least 1.
int max_threads();

// Runs body(i) for i in [0, n). The parallel form distributes iterations over
// max_threads() OpenMP threads; the serial form is the reference implementation.
template <class Body>
void for_each_index(std::size_t n, Body&& body) {
  const long nn = static_cast<long>(n);
#pragma omp parallel for schedule(static) num_threads(max_threads())
  for (long i = 0; i < nn; ++i) body(static_cast<std::size_t>(i));
}

template <class Body>
void for_each_index_serial(std::size_t n, Body&& body) {
  for (std::size_t i = 0; i < n; ++i) body(i);
}

}  // namespace nilcat::parallel
