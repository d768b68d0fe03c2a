#pragma once

#include <functional>

namespace fl {

struct QuadResult {
  double value = 0.0;
  double err = 0.0;  // Kronrod-Gauss difference summed over panels
  int evals = 0;
};

// Globally adaptive 21-point Gauss-Kronrod on [a, b]. Bisects the panel with the
// largest error estimate until the total estimate is below max(abs_tol, rel_tol*|I|)
// or max_panels is reached.
QuadResult integrate_gk21(const std::function<double(double)>& f, double a, double b,
                          double abs_tol, double rel_tol = 0.0, int max_panels = 2000);

// Same rule for a complex-valued integrand given as (re, im) pair.
struct QuadResultC {
  double re = 0.0, im = 0.0;
  double err = 0.0;
};
QuadResultC integrate_gk21_complex(const std::function<void(double, double&, double&)>& f,
                                   double a, double b, double abs_tol, int max_panels = 2000);

}  // namespace fl
