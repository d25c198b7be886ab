#pragma once

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ddvv {

/// Scheduling choice for the data-parallel kernels. Every parallel kernel has
/// a serial twin with identical output; tests compare the two bitwise.
enum class Execution { Serial, Parallel };

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace ddvv
