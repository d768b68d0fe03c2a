#include "fl/norms.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <ostream>
#include <vector>

#include "fl/errors.hpp"

namespace fl {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

int default_cells(const Kernel& k, int m) {
  if (m > 0) return m;
  return static_cast<int>(std::min<long long>(1 << 16, std::max<long long>(64, 16 * k.spec().n)));
}

// Certified max of f over one period. Continuum kernels are only accurate near t = 0,
// so the search runs on a window [-W - left, W] and the Abel envelope env / |sin(t/2)|
// bounds f outside; the window grows until that bound falls below the certified max.
Certified periodic_max(const Kernel& k, const std::function<double(double)>& f, double curvature,
                       double err_factor, double env_factor, double left, double tol, int m,
                       bool parallel) {
  MaxProblem mp;
  mp.f = f;
  mp.curvature = curvature;
  mp.tol = tol;
  if (k.mode() == KernelMode::Direct) {
    mp.a = 0.0;
    mp.b = 2.0 * kPi;
    mp.eval_err = err_factor * k.eval_err();
    mp.initial_cells = default_cells(k, m);
    return parallel ? certified_max(mp) : certified_max_serial(mp);
  }
  const double nd = static_cast<double>(k.spec().n);
  double W = 2.0 * std::asin(std::min(1.0, 2.0 * env_factor / k.tail().value));
  for (;;) {
    W = std::min(W, kPi);
    mp.a = -W - left;
    mp.b = W;
    mp.eval_err = err_factor * k.eval_err(W + left);
    mp.initial_cells = static_cast<int>(std::clamp((mp.b - mp.a) * nd / kPi * 8.0, 64.0, 1e6));
    Certified c = parallel ? certified_max(mp) : certified_max_serial(mp);
    const double outside = W >= kPi ? -std::numeric_limits<double>::infinity()
                                    : env_factor / std::sin(0.5 * W);
    if (outside <= c.lo || W >= kPi) {
      c.hi = std::max(c.hi, outside);
      return c;
    }
    W *= 2.0;
  }
}

Certified combine_abs(const Certified& up, const Certified& dn) {
  Certified out;
  out.lo = std::max(up.lo, dn.lo);
  out.hi = std::max(up.hi, dn.hi);
  out.arg = up.lo >= dn.lo ? up.arg : dn.arg;
  return out;
}

Certified combine_half_range(const Certified& up, const Certified& dn) {
  Certified out;
  out.lo = 0.5 * (up.lo + dn.lo);
  out.hi = 0.5 * (up.hi + dn.hi);
  out.arg = up.arg;
  return out;
}

double auto_tol(const Kernel& k, double tol) {
  if (tol > 0.0) return tol;
  const double n = static_cast<double>(k.spec().n);
  const double band = kPi / n * k.weighted_tail().value;
  return 1e-9 * std::max(band, 1e-6 * k.tail().value) + std::numeric_limits<double>::min();
}

double env_scale(const Kernel& k) { return k.envelope(kPi); }

}  // namespace

Extrema kernel_extrema(const Kernel& k, double tol, int m, bool parallel) {
  tol = auto_tol(k, tol);
  const double env = env_scale(k);
  Extrema e;
  e.max = periodic_max(k, [&](double t) { return k.value(t); }, k.curvature(), 1.0, env, 0.0, tol, m,
                       parallel);
  e.neg_min = periodic_max(k, [&](double t) { return -k.value(t); }, k.curvature(), 1.0, env, 0.0, tol,
                           m, parallel);
  return e;
}

Certified shift_half_diff_norm(const Kernel& k, double tol, int m, bool parallel) {
  tol = auto_tol(k, tol);
  const double shift = kPi / static_cast<double>(k.spec().n);
  const double env = env_scale(k);
  auto d = [&](double t) { return k.value(t + shift) - k.value(t); };
  const Certified up = periodic_max(k, d, 2.0 * k.curvature(), 2.0, 2.0 * env, shift, 2.0 * tol, m, parallel);
  const Certified dn = periodic_max(k, [&](double t) { return -d(t); }, 2.0 * k.curvature(), 2.0, 2.0 * env,
                                    shift, 2.0 * tol, m, parallel);
  Certified out = combine_abs(up, dn);
  out.lo *= 0.5;
  out.hi *= 0.5;
  return out;
}

NormTriple kernel_norms(const Kernel& k, double tol, int m, bool parallel) {
  NormTriple t;
  t.n = k.spec().n;
  t.beta = k.spec().beta;
  t.log_scale = k.log_scale();
  t.tail = k.tail();
  t.wt = k.weighted_tail();
  const Extrema e = kernel_extrema(k, tol, m, parallel);
  t.i1 = combine_abs(e.max, e.neg_min);
  t.i2 = combine_half_range(e.max, e.neg_min);
  t.i3 = shift_half_diff_norm(k, tol, m, parallel);
  return t;
}

NormTriple kernel_norms(const KernelSpec& ks, double tol, int m, bool parallel) {
  return kernel_norms(Kernel(ks), tol, m, parallel);
}

Certified class_supremum(const Kernel& k, double tol, int m, bool parallel) {
  const Extrema e = kernel_extrema(k, tol > 0.0 ? kPi * tol : tol, m, parallel);
  Certified c = combine_half_range(e.max, e.neg_min);
  c.lo /= kPi;
  c.hi /= kPi;
  return c;
}

namespace {

Certified to_absolute(Certified c, double s) {
  c.lo *= s;
  c.hi *= s;
  return c;
}

}  // namespace

Certified class_supremum(const KernelSpec& ks, int m, double tol) {
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  const Kernel k(ks);
  return to_absolute(class_supremum(k, tol / k.scale(), m), k.scale());
}

Certified shift_half_diff_norm(const KernelSpec& ks, int m, double tol) {
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  const Kernel k(ks);
  return to_absolute(shift_half_diff_norm(k, tol / k.scale(), m), k.scale());
}

namespace {

struct GridStats {
  double max = -std::numeric_limits<double>::infinity();
  double min = std::numeric_limits<double>::infinity();
  std::size_t arg_max = 0, arg_min = 0;
};

GridStats grid_stats(const GridFunction& gf) {
  GridStats s;
  for (std::size_t j = 0; j < gf.m(); ++j) {
    if (gf.values[j] > s.max) {
      s.max = gf.values[j];
      s.arg_max = j;
    }
    if (gf.values[j] < s.min) {
      s.min = gf.values[j];
      s.arg_min = j;
    }
  }
  return s;
}

// slack (absolute units) covering the gap between nodes and evaluation error
double grid_slack(const GridFunction& gf, const Kernel* k, double* err) {
  *err = 0.0;
  if (!k) return 0.0;
  const double h = gf.step();
  *err = k->eval_err() * k->scale();
  return k->curvature() * h * h / 8.0 * k->scale();
}

}  // namespace

Certified sup_norm(const GridFunction& gf, bool refine, const Kernel* k) {
  check(gf);
  std::vector<std::size_t> order(gf.m());
  for (std::size_t j = 0; j < gf.m(); ++j) order[j] = j;
  const std::size_t top = std::min<std::size_t>(3, gf.m());
  std::partial_sort(order.begin(), order.begin() + top, order.end(), [&](std::size_t x, std::size_t y) {
    const double ax = std::fabs(gf.values[x]), ay = std::fabs(gf.values[y]);
    return ax > ay || (ax == ay && x < y);
  });
  double err = 0.0;
  const double slack = grid_slack(gf, k, &err);
  Certified c;
  c.arg = gf.t(order[0]);
  double best = std::fabs(gf.values[order[0]]);
  if (refine && k) {
    const double h = gf.step(), s = k->scale();
    for (std::size_t i = 0; i < top; ++i) {
      const double t0 = gf.t(order[i]);
      auto f = [&](double t) { return std::fabs(k->value(t)) * s; };
      const double x = golden_max(f, t0 - h, t0 + h, 60);
      const double fx = f(x);
      if (fx > best) {
        best = fx;
        c.arg = std::fmod(x + 2.0 * kPi, 2.0 * kPi);
      }
    }
  }
  c.lo = best - err;
  c.hi = std::max(best, std::fabs(gf.values[order[0]]) + slack) + err;
  return c;
}

Certified chebyshev_centered_norm(const GridFunction& gf, const Kernel* k) {
  check(gf);
  const GridStats s = grid_stats(gf);
  double err = 0.0;
  const double slack = grid_slack(gf, k, &err);
  Certified c;
  const double half = 0.5 * (s.max - s.min);
  c.lo = half - err;
  c.hi = half + slack + err;
  c.arg = gf.t(s.arg_max);
  return c;
}

ThetaEstimate extract_theta(const Certified& value, const Bounded& tail, const Bounded& wt, long long n,
                            BandForm form, double e) {
  if (n < 1) throw DomainError("n must be >= 1");
  const double nd = static_cast<double>(n);
  double c0 = 1.0, c1 = kPi / nd;
  ThetaEstimate th;
  switch (form) {
    case BandForm::KernelNorm:
      break;
    case BandForm::ClassSup:
      c0 = 1.0 / kPi;
      c1 = 1.0 / nd;
      break;
    case BandForm::Sharpness:
      c0 = e / kPi;
      c1 = e / nd;
      th.band_lo = -2.0;
      break;
  }
  const double lead = c0 * tail.value;
  const double mid = value.mid();
  th.err = value.err() + c0 * tail.err + std::fabs(th.band_lo) * c1 * wt.err;
  th.degenerate = !(wt.value > 1e3 * kEps * std::fabs(tail.value));
  if (th.degenerate) {
    th.theta = th.theta_lo = th.theta_hi = 0.0;
    const double slack = std::fabs(th.band_lo) * c1 * std::max(wt.value, 0.0) + 1e3 * kEps * std::fabs(lead);
    th.value_lo = lead - slack;
    th.value_hi = lead;
    th.err += slack;
    th.in_band = std::fabs(mid - lead) <= th.err;
    return th;
  }
  const double unit = c1 * wt.value;
  th.theta = (mid - lead) / unit;
  th.theta_lo = th.theta - th.err / unit;
  th.theta_hi = th.theta + th.err / unit;
  th.value_lo = lead + th.band_lo * unit;
  th.value_hi = lead + th.band_hi * unit;
  th.in_band = mid >= th.value_lo - th.err && mid <= th.value_hi + th.err;
  return th;
}

void to_json(nlohmann::json& j, const Certified& c) {
  j = nlohmann::json{{"value", c.mid()}, {"err", c.err()}, {"lo", c.lo}, {"hi", c.hi}, {"arg", c.arg}};
}

void to_json(nlohmann::json& j, const NormTriple& t) {
  const double s = std::exp(t.log_scale);
  auto abs = [&](const Certified& c) { return nlohmann::json(to_absolute(c, s)); };
  j = nlohmann::json{{"n", t.n},
                     {"beta", t.beta},
                     {"log_scale", t.log_scale},
                     {"i1", abs(t.i1)},
                     {"i2", abs(t.i2)},
                     {"i3", abs(t.i3)},
                     {"tail", t.tail.value * s},
                     {"tail_err", t.tail.err * s},
                     {"weighted_tail", t.wt.value * s},
                     {"weighted_tail_err", t.wt.err * s},
                     {"scaled",
                      {{"i1", t.i1},
                       {"i2", t.i2},
                       {"i3", t.i3},
                       {"tail", t.tail.value},
                       {"weighted_tail", t.wt.value}}}};
}

void to_json(nlohmann::json& j, const ThetaEstimate& t) {
  j = nlohmann::json{{"theta", t.theta},       {"theta_lo", t.theta_lo}, {"theta_hi", t.theta_hi},
                     {"band_lo", t.band_lo},   {"band_hi", t.band_hi},   {"degenerate", t.degenerate},
                     {"in_band", t.in_band}};
}

void write_norms_csv_header(std::ostream& os) { os << "n,beta,i1,i2,i3,theta1,theta2,theta3\n"; }

void write_norms_csv_row(std::ostream& os, const NormTriple& t) {
  const double s = std::exp(t.log_scale);
  const ThetaEstimate a = extract_theta(t.i1, t.tail, t.wt, t.n, BandForm::KernelNorm);
  const ThetaEstimate b = extract_theta(t.i2, t.tail, t.wt, t.n, BandForm::KernelNorm);
  const ThetaEstimate c = extract_theta(t.i3, t.tail, t.wt, t.n, BandForm::KernelNorm);
  os << t.n << ',' << fmt17(t.beta) << ',' << fmt17(t.i1.mid() * s) << ',' << fmt17(t.i2.mid() * s) << ','
     << fmt17(t.i3.mid() * s) << ',' << fmt17(a.theta) << ',' << fmt17(b.theta) << ',' << fmt17(c.theta)
     << '\n';
}

}  // namespace fl
