#include "fl/parallel.hpp"

#include <cstdlib>
#include <string>

#include <omp.h>

namespace fl {

int configure_threads() {
  if (const char* env = std::getenv("FL_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n >= 1) omp_set_num_threads(n);
    } catch (const std::exception&) {
      // unparsable values leave the runtime default in place
    }
  }
  return omp_get_max_threads();
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace fl
