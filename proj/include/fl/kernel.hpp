#pragma once

#include <complex>
#include <vector>

#include "fl/grid.hpp"
#include "fl/psi.hpp"

namespace fl {

struct KernelSpec {
  PsiSpec psi;
  double beta = 0.0;
  long long n = 1;
};

void to_json(nlohmann::json& j, const KernelSpec& k);

enum class KernelMode {
  Direct,     // finite Horner sum in e^{it}
  Continuum,  // Euler-Maclaurin against an oscillatory integral; valid near t = 0
};

// Psi_{beta,n}(t) = sum_{k>=n} psi(k) cos(kt - beta pi/2)
//                = Re[e^{i(nt - beta pi/2)} G(t)],  G(t) = sum_{j>=0} psi(n+j) e^{ijt}.
// All values are divided by exp(log_scale()) so deep tails stay in range.
class Kernel {
 public:
  // abs_tol bounds the truncated series tail in absolute (unscaled) units; 0 asks for
  // truncation at rounding level.
  explicit Kernel(const KernelSpec& ks, double abs_tol = 0.0);

  const KernelSpec& spec() const { return ks_; }
  KernelMode mode() const { return mode_; }
  double log_scale() const { return ref_; }
  double scale() const;

  double value(double t) const;
  std::complex<double> G(double t) const;
  double g(double t) const { return G(t).real(); }
  double h(double t) const { return -G(t).imag(); }
  // sum_{k>=n} psi(k) sin(kt - beta pi/2) / k, a periodic antiderivative of value().
  double antiderivative(double t) const;

  // Bound on |value(t) - Psi(t)| (scaled) for |t| <= window after reduction mod 2pi.
  double eval_err(double window = 3.141592653589793) const;
  double antideriv_err() const { return antideriv_err_; }
  // sum k^2 psi(k) over the kernel's harmonics: bounds |Psi''|.
  double curvature() const { return curvature_; }
  // Abel bound: |Psi(t)| <= psi(n) / |sin(t/2)| for decreasing psi (scaled).
  double envelope(double t) const;
  // Largest |t| where value() may be called (pi in direct mode).
  double window_limit() const { return window_limit_; }

  Bounded tail() const { return tail_; }
  Bounded weighted_tail() const { return wt_; }
  long long last_index() const { return last_; }
  const std::vector<double>& coefficients() const { return c_; }

 private:
  std::complex<double> G_continuum(double t, double* err) const;

  KernelSpec ks_;
  KernelMode mode_ = KernelMode::Direct;
  double ref_ = 0.0;
  double beta_red_ = 0.0;  // beta mod 4
  Bounded tail_, wt_;
  long long last_ = 0;
  std::vector<double> c_;  // psi(n+j) / scale
  std::vector<double> d_;  // psi(n+j) / (n+j) / scale
  double trunc_err_ = 0.0;
  double round_err_ = 0.0;
  double antideriv_err_ = 0.0;
  double curvature_ = 0.0;
  double window_limit_ = 3.141592653589793;
  // continuum data
  double I0_ = 0.0;
  double fp0_ = 0.0;
  double cont_tol_ = 0.0;
};

// n t - beta pi/2 reduced to (-pi, pi], with n t formed in double-double so large n
// keeps full phase accuracy.
double reduced_phase(long long n, double t, double beta);
// t mod 2pi into (-pi, pi].
double reduce_angle(double t);

double eval_kernel(const KernelSpec& ks, double t, double tol);
double eval_g(const KernelSpec& ks, double t, double tol);
double eval_h(const KernelSpec& ks, double t, double tol);

// Samples at t_j = 2 pi j / m in absolute units. Requires m >= 4n.
GridFunction sample_kernel(const KernelSpec& ks, std::size_t m, double tol);
GridFunction sample_kernel_serial(const KernelSpec& ks, std::size_t m, double tol);
// Scaled samples from an existing kernel.
std::vector<double> sample_scaled(const Kernel& k, std::size_t m, bool parallel = true);

// D_{n-1}(t) = sin((n - 1/2) t) / (2 sin(t/2)).
double dirichlet_eval(long long n, double t);
// L_{n-1} = (1/pi) int_{-pi}^{pi} |D_{n-1}(t)| dt.
double lebesgue_constant(long long n, double tol = 1e-13);

}  // namespace fl
