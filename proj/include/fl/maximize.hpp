#pragma once

#include <functional>

namespace fl {

// Two-sided enclosure of a scalar quantity.
struct Certified {
  double lo = 0.0;
  double hi = 0.0;
  double arg = 0.0;  // location where lo was attained, if meaningful

  double mid() const { return 0.5 * (lo + hi); }
  double err() const { return 0.5 * (hi - lo); }
};

// Golden-section search for a maximum of f on [a, b]; returns the best abscissa.
double golden_max(const std::function<double(double)>& f, double a, double b, int iters = 60);

struct MaxProblem {
  std::function<double(double)> f;  // called concurrently; must be thread-safe
  double a = 0.0, b = 0.0;
  double curvature = 0.0;  // upper bound on |f''| over [a, b]
  double eval_err = 0.0;   // upper bound on |computed f - f|
  double tol = 0.0;        // requested hi - lo
  int initial_cells = 64;
  int polish = 3;          // golden refinements around the best grid nodes
};

// Branch and bound with the curvature majorant max(f_l, f_r) + M w^2/8 on each cell.
// lo is attained (up to eval_err) so it is a valid lower bound on max f; hi bounds
// max f from above on the whole interval. Ties in arg go to the smallest abscissa.
Certified certified_max(const MaxProblem& p);

// Same search without OpenMP. Reference for tests; results are bitwise identical.
Certified certified_max_serial(const MaxProblem& p);

// Root of f on [a, b] with f(a) f(b) <= 0 (TOMS 748).
double bracket_root(const std::function<double(double)>& f, double a, double b,
                    double fa, double fb);

}  // namespace fl
