#include "fl/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

#include "fl/errors.hpp"
#include "fl/quadrature.hpp"

namespace fl {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPiHi = 6.283185307179586;
constexpr double kTwoPiLo = 2.4492935982947064e-16;
constexpr long long kMaxDirect = 200'000;

}  // namespace

void to_json(nlohmann::json& j, const KernelSpec& k) {
  j = nlohmann::json{{"psi", k.psi}, {"beta", k.beta}, {"n", k.n}};
}

double reduce_angle(double t) {
  if (std::fabs(t) <= kPi) return t;
  const double k = std::nearbyint(t / kTwoPiHi);
  double r = std::fma(-k, kTwoPiHi, t);
  r = std::fma(-k, kTwoPiLo, r);
  if (r > kPi) r -= kTwoPiHi;
  if (r <= -kPi) r += kTwoPiHi;
  return r;
}

double reduced_phase(long long n, double t, double beta) {
  const double nd = static_cast<double>(n);
  const double hi = nd * t;
  const double lo = std::fma(nd, t, -hi);
  double b = std::fmod(beta, 4.0);
  if (b < 0.0) b += 4.0;
  const double k = std::nearbyint(hi / kTwoPiHi);
  double r = std::fma(-k, kTwoPiHi, hi);
  r = std::fma(-k, kTwoPiLo, r);
  r += lo - b * (0.5 * kPi);
  return reduce_angle(r);
}

Kernel::Kernel(const KernelSpec& ks, double abs_tol) : ks_(ks) {
  validate(ks.psi);
  if (ks.n < 1) throw DomainError("kernel index n must be >= 1");
  if (!std::isfinite(ks.beta)) throw DomainError("beta must be finite");
  beta_red_ = std::fmod(ks.beta, 4.0);
  if (beta_red_ < 0.0) beta_red_ += 4.0;
  const PsiSpec& psi = ks.psi;
  const long long n = ks.n;
  ref_ = log_ref(psi, n);
  tail_ = tail_sum_scaled(psi, n);
  wt_ = weighted_tail_scaled(psi, n);

  const double target =
      std::max(abs_tol > 0.0 ? 0.5 * abs_tol * std::exp(-ref_) : 0.0, 1e-17 * tail_.value);
  if (psi.is_table()) {
    last_ = std::max(n - 1, psi.support_end());
    trunc_err_ = 0.0;
  } else {
    last_ = truncation_index(psi, n, target, ref_, kMaxDirect);
    const bool capped = last_ == 0;
    if (capped) {
      last_ = n + kMaxDirect;
      const Bounded rest = series_scaled(psi, last_ + 1, 0.0, 0, ref_);
      trunc_err_ = rest.value + rest.err;
    } else {
      trunc_err_ = target;
    }
    const double alpha_n = 1.0 / (static_cast<double>(n) * std::fabs(log_derivs(psi, static_cast<double>(n)).l1));
    if (capped && trunc_err_ > 1e-9 * tail_.value && static_cast<double>(n) >= log_convex_from(psi) && alpha_n <= 0.25)
      mode_ = KernelMode::Continuum;
  }

  if (mode_ == KernelMode::Direct) {
    const long long d = last_ - n + 1;
    c_.resize(static_cast<std::size_t>(std::max(0LL, d)));
    d_.resize(c_.size());
    const double inv_scale = std::exp(-ref_);
    double sum = 0.0, curv = 0.0;
    for (long long j = 0; j < d; ++j) {
      const long long k = n + j;
      const double kd = static_cast<double>(k);
      const double v = psi.is_table() ? psi.values[k - 1] * inv_scale
                                      : std::exp(log_derivs(psi, kd).l0 - ref_);
      c_[j] = v;
      d_[j] = v / kd;
      sum += v;
      curv += kd * kd * v;
    }
    round_err_ = 8.0 * static_cast<double>(d + 2) * kEps * sum;
    curvature_ = curv * (1.0 + 4.0 * static_cast<double>(d + 2) * kEps);
    antideriv_err_ = (trunc_err_ + round_err_) / static_cast<double>(n);
  } else {
    const Bounded m2 = series_scaled(psi, n, 0.0, 2, ref_);
    curvature_ = m2.value + m2.err;
    const Bounded i0 = integral_scaled(psi, static_cast<double>(n), 0, ref_, 1e-13);
    I0_ = i0.value;
    fp0_ = std::fabs(log_derivs(psi, static_cast<double>(n)).l1);
    cont_tol_ = 1e-12 * I0_ + i0.err;
    round_err_ = 64.0 * kEps * (I0_ + 1.0);
    antideriv_err_ = std::numeric_limits<double>::infinity();
  }
}

double Kernel::scale() const { return std::exp(ref_); }

double Kernel::envelope(double t) const {
  const double s = std::fabs(std::sin(0.5 * reduce_angle(t)));
  const double psin = ks_.psi.is_table() ? eval_psi(ks_.psi, ks_.n) * std::exp(-ref_) : 1.0;
  return s == 0.0 ? std::numeric_limits<double>::infinity() : psin / s;
}

std::complex<double> Kernel::G(double t) const {
  const double tr = reduce_angle(t);
  if (mode_ == KernelMode::Continuum) return G_continuum(tr, nullptr);
  const std::complex<double> z(std::cos(tr), std::sin(tr));
  std::complex<double> acc(0.0, 0.0);
  for (std::size_t j = c_.size(); j-- > 0;) acc = acc * z + c_[j];
  return acc;
}

std::complex<double> Kernel::G_continuum(double t, double* err_out) const {
  const PsiSpec& psi = ks_.psi;
  const double n = static_cast<double>(ks_.n);
  double re = 0.0, im = 0.0, err = 0.0;
  if (t == 0.0) {
    re = I0_;
  } else {
    const double at = std::fabs(t);
    const double half_period = kPi / at;
    auto f = [&](double x) { return std::exp(log_derivs(psi, n + x).l0 - ref_); };
    auto integrand = [&](double x, double& fr, double& fi) {
      const double v = f(x);
      fr = v * std::cos(x * t);
      fi = v * std::sin(x * t);
    };
    double x = 0.0, len = std::min(half_period, 1.0 / fp0_);
    bool closed = false;
    for (int panel = 0; panel < 200000; ++panel) {
      const QuadResultC q = integrate_gk21_complex(integrand, x, x + len, 1e-3 * cont_tol_, 400);
      re += q.re;
      im += q.im;
      err += q.err;
      x += len;
      len = std::min(half_period, 2.0 * len);
      const LogDerivs d = log_derivs(psi, n + x);
      const double fx = std::exp(d.l0 - ref_);
      const double fpx = fx * std::fabs(d.l1);
      if (fpx / (t * t) <= 0.25 * cont_tol_) {
        // integration by parts: i f(X) e^{iXt}/t - f'(X) e^{iXt}/t^2, remainder <= |f'(X)|/t^2
        const double c = std::cos(x * t), s = std::sin(x * t);
        const double ar = fpx / (t * t), ai = fx / t;
        re += ar * c - ai * s;
        im += ar * s + ai * c;
        err += fpx / (t * t);
        closed = true;
        break;
      }
    }
    if (!closed) throw ToleranceError("oscillatory kernel integral did not converge");
  }
  // Euler-Maclaurin: sum_j f(j) e^{ijt} = int + f(0)/2 - (f'(0) + i t f(0))/12 + R
  re += 0.5 + fp0_ / 12.0;
  im -= t / 12.0;
  if (err_out) *err_out = err;
  if (err > 2.0 * cont_tol_) throw ToleranceError("kernel integral exceeded its error budget");
  return {re, im};
}

double Kernel::value(double t) const {
  const double tr = reduce_angle(t);
  const double th = reduced_phase(ks_.n, tr, beta_red_);
  const std::complex<double> g = G(tr);
  return g.real() * std::cos(th) - g.imag() * std::sin(th);
}

double Kernel::antiderivative(double t) const {
  if (mode_ == KernelMode::Continuum)
    throw UnsupportedError("antiderivative is only available for directly summed kernels");
  const double tr = reduce_angle(t);
  const std::complex<double> z(std::cos(tr), std::sin(tr));
  std::complex<double> acc(0.0, 0.0);
  for (std::size_t j = d_.size(); j-- > 0;) acc = acc * z + d_[j];
  const double th = reduced_phase(ks_.n, tr, beta_red_);
  return acc.real() * std::sin(th) + acc.imag() * std::cos(th);
}

double Kernel::eval_err(double window) const {
  if (mode_ == KernelMode::Direct) return trunc_err_ + round_err_;
  const double w = std::min(std::fabs(window), kPi);
  return 2.0 * cont_tol_ + round_err_ + (fp0_ + 2.0 * w + w * w * I0_) / 12.0;
}

double eval_kernel(const KernelSpec& ks, double t, double tol) {
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  const Kernel k(ks, tol);
  return k.value(t) * k.scale();
}

double eval_g(const KernelSpec& ks, double t, double tol) {
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  const Kernel k(ks, tol);
  return k.g(t) * k.scale();
}

double eval_h(const KernelSpec& ks, double t, double tol) {
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  const Kernel k(ks, tol);
  return k.h(t) * k.scale();
}

std::vector<double> sample_scaled(const Kernel& k, std::size_t m, bool parallel) {
  std::vector<double> out(m);
  const std::int64_t mm = static_cast<std::int64_t>(m);
#pragma omp parallel for schedule(static) if (parallel)
  for (std::int64_t j = 0; j < mm; ++j)
    out[j] = k.value(2.0 * kPi * static_cast<double>(j) / static_cast<double>(m));
  return out;
}

namespace {

GridFunction sample_impl(const KernelSpec& ks, std::size_t m, double tol, bool parallel) {
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  if (m < 2 || static_cast<long long>(m) < 4 * ks.n)
    throw ResolutionError("grid size must satisfy m >= 4n");
  const Kernel k(ks, tol);
  std::vector<double> v = sample_scaled(k, m, parallel);
  const double s = k.scale();
  for (double& x : v) x *= s;
  return GridFunction(std::move(v));
}

}  // namespace

GridFunction sample_kernel(const KernelSpec& ks, std::size_t m, double tol) {
  return sample_impl(ks, m, tol, true);
}

GridFunction sample_kernel_serial(const KernelSpec& ks, std::size_t m, double tol) {
  return sample_impl(ks, m, tol, false);
}

double dirichlet_eval(long long n, double t) {
  if (n < 1) throw DomainError("Dirichlet kernel index must be >= 1");
  const double tr = reduce_angle(t);
  const double nh = static_cast<double>(n) - 0.5;
  const double s = std::sin(0.5 * tr);
  if (std::fabs(s) < 1e-8) {
    const double x = nh * tr;
    const double sinc = x == 0.0 ? 1.0 : std::sin(x) / x;
    const double ratio = s == 0.0 ? 1.0 : 0.5 * tr / s;
    return nh * sinc * ratio;
  }
  return std::sin(nh * tr) / (2.0 * s);
}

double lebesgue_constant(long long n, double tol) {
  if (n < 1) throw DomainError("Lebesgue constant index must be >= 1");
  if (n == 1) return 1.0;
  // |D| is smooth between consecutive zeros 2 j pi / (2n - 1) of sin((n - 1/2) t)
  const double step = 2.0 * kPi / static_cast<double>(2 * n - 1);
  auto f = [n](double t) { return std::fabs(dirichlet_eval(n, t)); };
  double total = 0.0;
  const double arc_tol = 0.25 * kPi * tol / static_cast<double>(n);
  for (long long j = 0; j < n; ++j) {
    const double a = step * static_cast<double>(j);
    const double b = j == n - 1 ? kPi : step * static_cast<double>(j + 1);
    total += integrate_gk21(f, a, b, arc_tol, 0.0, 200).value;
  }
  return 2.0 * total / kPi;
}

}  // namespace fl
