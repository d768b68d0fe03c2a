#pragma once

#include <string>

#include "fl/grid.hpp"
#include "fl/psi.hpp"
#include "fl/trigpoly.hpp"

namespace fl {

// Trapezoid Fourier coefficients up to degree upto. Requires m >= 4 upto.
TrigPoly fourier_coeffs(const GridFunction& gf, int upto);
TrigPoly fourier_coeffs_serial(const GridFunction& gf, int upto);

GridFunction sample(const TrigPoly& p, std::size_t m);

// S_{n-1}(f) and f - S_{n-1}(f) on the same grid.
GridFunction partial_sum(const GridFunction& gf, long long n);
GridFunction deviation(const GridFunction& gf, long long n);
// Exact versions for trigonometric polynomials: harmonics k >= n.
TrigPoly deviation(const TrigPoly& f, long long n);

// (psi, beta)-integral as a Fourier multiplier: harmonic k is scaled by psi(k) and its
// phase shifted by beta pi/2. phi must have zero mean within 1e-10; the output mean is
// a0/2.
GridFunction psi_integrate(const GridFunction& phi, const PsiSpec& spec, double beta, double a0 = 0.0);
TrigPoly psi_integrate(const TrigPoly& phi, const PsiSpec& spec, double beta, double a0 = 0.0);

// Composite trapezoid of |values| over one period.
double l1_norm(const GridFunction& gf);
// Exact integral of |p| from its sign changes.
double l1_norm(const TrigPoly& p);

struct L1ApproxResult {
  TrigPoly poly;        // best approximant of degree <= n-1
  double value = 0.0;   // E_n(f)_{L1} estimate (attained by poly)
  double gap = 0.0;     // value minus a certified dual lower bound
  std::size_t grid_m = 0;
  int iterations = 0;
  std::string method;   // "exact", "zero", "simplex", "newton"
};

// Discrete problem on the grid of gf. When the samples come from a trigonometric
// polynomial the result is polished in the continuum.
L1ApproxResult best_l1(const GridFunction& gf, long long n, double tol);
// Continuum problem for a trigonometric polynomial: grid simplex at m and 2m, each
// polished by Newton's method; the two values must agree within tol.
L1ApproxResult best_l1(const TrigPoly& f, long long n, double tol, std::size_t m = 0);

// Grid-only linear program, no polishing. Exposed for tests and benchmarks.
L1ApproxResult best_l1_discrete(const GridFunction& gf, long long n, double tol);

void to_json(nlohmann::json& j, const L1ApproxResult& r);

}  // namespace fl
