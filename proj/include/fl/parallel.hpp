#pragma once

namespace fl {

// Applies the FL_THREADS cap (if set) to the OpenMP runtime and returns the
// resulting thread count. Safe to call repeatedly.
int configure_threads();

int max_threads();

}  // namespace fl
