// Acceptance criteria 1-9. One line per criterion; exit status 1 if any fails.

#include <omp.h>

#include <algorithm>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "fl/extremal.hpp"
#include "fl/kernel.hpp"
#include "fl/l1.hpp"
#include "fl/psi.hpp"
#include "fl/verify.hpp"

using namespace fl;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool ok = true;
  std::string detail;
  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

std::string fmt(const char* f, double v) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double width(const VerificationReport& r) { return r.band.hi - r.band.lo; }

Outcome criterion1() {
  Outcome o;
  const int threads = omp_get_max_threads();
  omp_set_num_threads(1);
  const auto t0 = std::chrono::steady_clock::now();
  int cases = 0;
  double worst = 0.0;
  for (double q : {0.3, 0.5, 0.8})
    for (double beta : {0.0, 0.5, 1.0, 1.5, 1.9})
      for (long long n = 1; n <= 32; ++n) {
        for (const auto& r : verify_kernel_norms(PsiSpec::geometric_q(q), beta, n)) {
          ++cases;
          const double rel = r.computed.err() / width(r);
          worst = std::max(worst, rel);
          if (!r.pass()) o.fail(r.case_id + " " + status_name(r.status) + " " + r.note);
          if (!(rel <= 1e-8)) o.fail(r.case_id + " error/width " + fmt("%.3g", rel));
        }
      }
  const double secs = seconds_since(t0);
  omp_set_num_threads(threads);
  if (secs >= 60.0) o.fail("runtime " + fmt("%.1f s", secs));
  if (o.ok)
    o.detail = std::to_string(cases) + " norms in band, ordered; max error/width " + fmt("%.2g", worst) +
               "; " + fmt("%.2f s single-threaded", secs);
  return o;
}

Outcome criterion2() {
  Outcome o;
  int cases = 0;
  double tmin = 1.0, tmax = -2.0;
  for (double alpha : {0.25, 1.0, 2.0})
    for (double beta : {0.0, 1.0})
      for (long long n = 1; n <= 16; ++n) {
        const VerificationReport r = verify_geometric_exact(alpha, beta, n);
        ++cases;
        if (!r.pass()) o.fail(r.case_id + " " + status_name(r.status));
        if (!(r.computed.err() <= 1e-8 * width(r))) o.fail(r.case_id + " enclosure too wide");
        for (const Coefficient& c : r.coefficients) {
          if (c.name != "Theta") continue;
          tmin = std::min(tmin, c.value);
          tmax = std::max(tmax, c.value);
          if (c.value < -1.0 || c.value > 0.0) o.fail(r.case_id + " Theta=" + fmt("%.17g", c.value));
        }
      }
  if (o.ok) o.detail = std::to_string(cases) + " cases in band, Theta in [" + fmt("%.4f", tmin) + ", " + fmt("%.4f", tmax) + "]";
  return o;
}

struct ExtremalFixture {
  ExtremalConstruction c;
  SharpnessReport s;
};

std::vector<ExtremalFixture> extremal_fixtures() {
  std::vector<ExtremalFixture> out;
  for (double beta : {0.0, 1.0})
    for (long long n : {2LL, 4LL, 8LL}) {
      ExtremalFixture f;
      f.c = build_construction(KernelSpec{PsiSpec::geometric_q(0.5), beta, n}, 1.0);
      f.s = sharpness(f.c, f.c.ell_star.m);
      out.push_back(f);
    }
  return out;
}

Outcome criterion3(const std::vector<ExtremalFixture>& fx) {
  Outcome o;
  double worst_best = 0.0, worst_coef = 0.0;
  for (const ExtremalFixture& f : fx) {
    const std::string id = "beta=" + fmt("%g", f.c.kspec.beta) + " n=" + std::to_string(f.c.kspec.n);
    if (std::fabs(phi_l1_exact(f.c) - 1.0) > 4.0 * std::numeric_limits<double>::epsilon())
      o.fail(id + " ||Phi||_1=" + fmt("%.17g", phi_l1_exact(f.c)));
    worst_best = std::max(worst_best, std::fabs(f.s.best.value - 1.0));
    worst_coef = std::max(worst_coef, f.s.best.poly.max_coef());
    if (!(std::fabs(f.s.best.value - 1.0) <= 1e-6)) o.fail(id + " best_l1=" + fmt("%.17g", f.s.best.value));
    if (!(f.s.best.poly.max_coef() <= 1e-6)) o.fail(id + " max coefficient " + fmt("%.3g", f.s.best.poly.max_coef()));
    // q = 1/2: sum_{k>=n} 2^-k = sum_{k>=1} k 2^-(k+n) = 2^(1-n)
    const double tail = std::ldexp(1.0, static_cast<int>(1 - f.c.kspec.n)), wt = tail;
    const double lower = tail / kPi - 2.0 / static_cast<double>(f.c.kspec.n) * wt;
    if (!(std::fabs(f.s.rho0.value) >= lower - 1e-6)) o.fail(id + " |rho(0)|=" + fmt("%.17g", f.s.rho0.value));
    if (!(f.s.xi.theta >= -2.0 && f.s.xi.theta <= 0.0)) o.fail(id + " xi=" + fmt("%.17g", f.s.xi.theta));
  }
  if (o.ok)
    o.detail = std::to_string(fx.size()) + " constructions; max |E-1| " + fmt("%.2g", worst_best) +
               ", max coefficient " + fmt("%.2g", worst_coef);
  return o;
}

struct RandomFixture {
  TrigPoly phi;
  long long n;
  L1ApproxResult best;
};

std::vector<RandomFixture> random_fixtures() {
  std::vector<RandomFixture> out;
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (long long n : {4LL, 8LL})
    for (int trial = 0; trial < 100; ++trial) {
      TrigPoly p(static_cast<int>(4 * n));
      for (int k = 0; k < p.size(); ++k) p.a[k] = u(rng), p.b[k] = u(rng);
      out.push_back({p, n, {}});
    }
#pragma omp parallel for schedule(dynamic, 1)
  for (long long i = 0; i < static_cast<long long>(out.size()); ++i)
    out[i].best = best_l1(out[i].phi, out[i].n, 1e-9);
  return out;
}

Outcome criterion4(const std::vector<RandomFixture>& fx) {
  Outcome o;
  double worst = -1e300;
  int trials = 0;
  const PsiSpec specs[] = {PsiSpec::geometric_q(0.5), PsiSpec::generalized_poisson(1.0, 2.0)};
  for (const PsiSpec& spec : specs) {
    for (std::size_t i = 0; i < fx.size(); ++i) {
      const RandomFixture& f = fx[i];
      const double beta = 0.5 * static_cast<double>(i % 4);
      const TrigPoly dev = deviation(psi_integrate(f.phi, spec, beta), f.n);
      const Certified sup = sup_abs(dev, 1e-13);
      const double bound = tail_sum(spec, f.n, 1e-15) / kPi * (f.best.value - f.best.gap);
      ++trials;
      worst = std::max(worst, sup.hi - bound);
      if (!(sup.hi <= bound + 1e-6))
        o.fail(family_name(spec.family) + " n=" + std::to_string(f.n) + " trial " + std::to_string(i) +
               ": sup=" + fmt("%.17g", sup.hi) + " bound=" + fmt("%.17g", bound));
    }
  }
  if (o.ok) o.detail = std::to_string(trials) + " trials; max (sup - bound) " + fmt("%.3g", worst);
  return o;
}

// Independent oracle: exp-sinh quadrature of psi on [a, inf).
Outcome criterion5() {
  Outcome o;
  int cases = 0;
  for (const PsiSpec& s : {PsiSpec::loglog_power(), PsiSpec::exp_log_squared(), PsiSpec::exp_over_log()}) {
    for (double a : {10.0, 100.0, 1000.0}) {
      const std::string id = family_name(s.family) + " a=" + fmt("%g", a);
      const IntegralEstimate e = integral_tail(s, a, 1e-13);
      const double ref = std::exp(log_ref(s, static_cast<long long>(a)));
      boost::math::quadrature::exp_sinh<double> q;
      const double oracle =
          ref * q.integrate([&](double x) { return psi_at(s, a + x) / ref; }, 1e-15);
      ++cases;
      if (!(e.I1_err <= 1e-10 * e.I1)) o.fail(id + " quadrature error " + fmt("%.3g", e.I1_err / e.I1));
      if (!(std::fabs(e.I1 - oracle) <= 1e-10 * oracle)) o.fail(id + " differs from exp-sinh oracle");
      if (!e.lemma_checked || !e.lemma_holds) o.fail(id + " lemma bounds not met");
      if (!(e.lemma_lo <= e.I1 && e.I1 <= e.lemma_hi)) o.fail(id + " integral outside bounds");
    }
  }
  if (o.ok) o.detail = std::to_string(cases) + " points inside [lambda psi, lambda psi (1 + alpha/(1-alpha))]";
  return o;
}

Outcome criterion6() {
  Outcome o;
  std::string ns;
  for (const PsiSpec& s : {PsiSpec::loglog_power(), PsiSpec::exp_log_squared(), PsiSpec::exp_over_log()}) {
    const long long n0 = first_n_alpha_below(s, 0.25);
    if (n0 <= 0) {
      o.fail(family_name(s.family) + " has no n with alpha(n) <= 1/4");
      continue;
    }
    ns += (ns.empty() ? "" : ", ") + family_name(s.family) + " from n=" + std::to_string(n0);
    for (long long n = n0; n < n0 + 3; ++n) {
      const VerificationReport r = verify_M_class(s, 0.0, n);
      if (!r.pass()) o.fail(r.case_id + " " + status_name(r.status) + " " + r.note);
    }
  }
  if (o.ok) o.detail = "9 cases in band (" + ns + ")";
  return o;
}

Outcome criterion7() {
  Outcome o;
  const std::vector<long long> ns{10, 100, 1000, 10000};
  for (const PsiSpec& s : {PsiSpec::loglog_power(), PsiSpec::exp_log_squared(), PsiSpec::exp_over_log()}) {
    double prev = std::numeric_limits<double>::infinity();
    for (long long n : ns) {
      const double r = asymp_ratio(s, n);
      if (!(r < prev)) o.fail(family_name(s.family) + " not strictly decreasing at n=" + std::to_string(n));
      prev = r;
    }
  }
  double worst = 0.0;
  for (double q : {0.3, 0.5, 0.8})
    for (long long n : ns) {
      const double want = q / (static_cast<double>(n) * (1.0 - q));
      const double diff = std::fabs(asymp_ratio(PsiSpec::geometric_q(q), n) - want);
      worst = std::max(worst, diff);
      if (!(diff <= 1e-12)) o.fail("geometric q=" + fmt("%g", q) + " n=" + std::to_string(n));
    }
  if (o.ok) o.detail = "three families strictly decreasing; geometric max |diff| " + fmt("%.2g", worst);
  return o;
}

Outcome criterion8() {
  Outcome o;
  // frozen from tests/oracles/lebesgue_oracle.py
  constexpr double kBound = 1.5;
  constexpr double kOracleMax = 1.361266464131390;
  double worst = 0.0;
  for (long long n = 2; n <= 512; ++n) {
    const double L = lebesgue_constant(n + 1);  // L_n
    const double d = std::fabs(L - 4.0 / (kPi * kPi) * std::log(static_cast<double>(n)));
    worst = std::max(worst, d);
    if (!(d <= kBound)) o.fail("n=" + std::to_string(n) + " deviation " + fmt("%.17g", d));
  }
  if (std::fabs(worst - kOracleMax) > 1e-10) o.fail("max deviation " + fmt("%.15f", worst) + " differs from oracle");
  if (std::fabs(lebesgue_constant(101) - 3.138780092654848) > 1e-12) o.fail("L_100 differs from oracle");
  if (o.ok) o.detail = "max |L_n - (4/pi^2) ln n| over [2, 512] = " + fmt("%.15f", worst);
  return o;
}

Outcome criterion9(const std::vector<ExtremalFixture>& ex, const std::vector<RandomFixture>& rf) {
  Outcome o;
  double worst = 0.0;
  for (const ExtremalFixture& f : ex) {
    const SharpnessReport s2 = sharpness(f.c, 2 * f.s.grid_m);
    const double d = std::fabs(s2.best.value - f.s.best.value);
    worst = std::max(worst, d);
    if (!(d < 1e-7)) o.fail("extremal n=" + std::to_string(f.c.kspec.n) + " changed by " + fmt("%.3g", d));
  }
  std::vector<double> diffs(rf.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long long i = 0; i < static_cast<long long>(rf.size()); ++i) {
    const L1ApproxResult r2 = best_l1(rf[i].phi, rf[i].n, 1e-9, 2 * rf[i].best.grid_m);
    diffs[i] = std::fabs(r2.value - rf[i].best.value);
  }
  for (std::size_t i = 0; i < diffs.size(); ++i) {
    worst = std::max(worst, diffs[i]);
    if (!(diffs[i] < 1e-7)) o.fail("random trial " + std::to_string(i) + " changed by " + fmt("%.3g", diffs[i]));
  }
  if (o.ok) o.detail = std::to_string(ex.size() + rf.size()) + " fixtures; max change " + fmt("%.2g", worst);
  return o;
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int k, const std::function<Outcome()>& run) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    failures += o.ok ? 0 : 1;
    std::printf("criterion %d: %s (%s) [%.1f s]\n", k, o.ok ? "PASS" : "FAIL", o.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
  };
  std::vector<ExtremalFixture> ex;
  std::vector<RandomFixture> rf;
  report(1, criterion1);
  report(2, criterion2);
  report(3, [&] {
    ex = extremal_fixtures();
    return criterion3(ex);
  });
  report(4, [&] {
    rf = random_fixtures();
    return criterion4(rf);
  });
  report(5, criterion5);
  report(6, criterion6);
  report(7, criterion7);
  report(8, criterion8);
  report(9, [&] { return criterion9(ex, rf); });
  return failures == 0 ? 0 : 1;
}
