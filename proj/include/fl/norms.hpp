#pragma once

#include <iosfwd>

#include "fl/grid.hpp"
#include "fl/kernel.hpp"
#include "fl/maximize.hpp"

namespace fl {

// Kernel norms in scaled units (multiply by exp(log_scale) for absolute values).
struct NormTriple {
  long long n = 1;
  double beta = 0.0;
  double log_scale = 0.0;
  Certified i1;  // sup |Psi|
  Certified i2;  // inf_c sup |Psi - c| = (max Psi - min Psi) / 2
  Certified i3;  // sup |Psi(t + pi/n) - Psi(t)| / 2
  Bounded tail;  // sum_{k>=n} psi(k)
  Bounded wt;    // sum_{k>=1} k psi(k+n)
};

// Certified max and min of the kernel over one period. tol is the requested width
// of each enclosure in scaled units; m seeds the branch and bound grid.
struct Extrema {
  Certified max;      // max Psi
  Certified neg_min;  // max (-Psi)
};
Extrema kernel_extrema(const Kernel& k, double tol, int m = 0, bool parallel = true);

NormTriple kernel_norms(const Kernel& k, double tol, int m = 0, bool parallel = true);
NormTriple kernel_norms(const KernelSpec& ks, double tol, int m = 0, bool parallel = true);

Certified shift_half_diff_norm(const Kernel& k, double tol, int m = 0, bool parallel = true);
// Absolute units; tol absolute.
Certified shift_half_diff_norm(const KernelSpec& ks, int m, double tol);

// (1/pi) (max Psi - min Psi) / 2, scaled.
Certified class_supremum(const Kernel& k, double tol, int m = 0, bool parallel = true);
// Absolute units; tol absolute.
Certified class_supremum(const KernelSpec& ks, int m, double tol);

// Grid-based norms in the units of gf. With a kernel, the enclosure is widened by the
// curvature bound M h^2 / 8 between nodes plus the kernel's evaluation error, and
// refine polishes the top three nodes with direct kernel calls. Without a kernel the
// result is the plain sample extremum.
Certified sup_norm(const GridFunction& gf, bool refine, const Kernel* k = nullptr);
Certified chebyshev_centered_norm(const GridFunction& gf, const Kernel* k = nullptr);

enum class BandForm {
  KernelNorm,       // value = tail + Theta (pi/n) wt,          Theta in [-1, 0]
  ClassSup,    // value = tail/pi + Theta wt/n,            Theta in [-1, 0]
  Sharpness,  // value = e (tail/pi + xi wt/n),           xi in [-2, 0]
};

struct ThetaEstimate {
  double theta = 0.0;
  double theta_lo = 0.0, theta_hi = 0.0;  // range implied by all error terms
  double band_lo = -1.0, band_hi = 0.0;   // admissible coefficient range
  double value_lo = 0.0, value_hi = 0.0;  // band in value units
  double err = 0.0;                       // combined error on value
  bool degenerate = false;                // wt negligible: value must equal the leading term
  bool in_band = false;
};

// value, tail and wt share one scale. e multiplies the whole band (Sharpness only).
ThetaEstimate extract_theta(const Certified& value, const Bounded& tail, const Bounded& wt,
                            long long n, BandForm form, double e = 1.0);

void to_json(nlohmann::json& j, const Certified& c);
void to_json(nlohmann::json& j, const NormTriple& t);
void to_json(nlohmann::json& j, const ThetaEstimate& t);

// CSV sweep rows: n,beta,i1,i2,i3,theta1,theta2,theta3 (absolute values).
void write_norms_csv_header(std::ostream& os);
void write_norms_csv_row(std::ostream& os, const NormTriple& t);

}  // namespace fl
