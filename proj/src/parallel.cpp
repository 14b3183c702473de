#include "nilcat/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <algorithm>
#include <string>

namespace nilcat::parallel {

int max_threads() {
  if (const char* env = std::getenv("NILCAT_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (...) {
    }
  }
  return std::max(1, omp_get_max_threads());
}

}  // namespace nilcat::parallel
