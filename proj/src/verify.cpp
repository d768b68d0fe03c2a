#include "fl/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "fl/errors.hpp"
#include "fl/l1.hpp"
#include "fl/norms.hpp"

namespace fl {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string spec_label(const PsiSpec& s) {
  std::string out = family_name(s.family);
  switch (s.family) {
    case Family::Geometric:
      return out + "(alpha=" + fmt("%.6g", s.alpha) + ")";
    case Family::GeneralizedPoisson:
      return out + "(alpha=" + fmt("%.6g", s.alpha) + ",r=" + fmt("%.6g", s.r) + ")";
    case Family::FiniteSupport:
    case Family::UserTable:
      return out + "(K=" + std::to_string(s.values.size()) + ")";
    default:
      return out;
  }
}

std::string case_id(const std::string& what, const PsiSpec& s, double beta, long long n) {
  return what + "/" + spec_label(s) + "/beta=" + fmt("%.6g", beta) + "/n=" + std::to_string(n);
}

class Timer {
 public:
  Timer() : t0_(std::chrono::steady_clock::now()) {}
  void stamp(VerificationReport& r, const VerifyOptions& o) const {
    if (!o.timing) return;
    r.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0_).count();
  }
  void stamp(std::vector<VerificationReport>& rs, const VerifyOptions& o) const {
    for (auto& r : rs) stamp(r, o);
  }

 private:
  std::chrono::steady_clock::time_point t0_;
};

int grid_for(const VerifyOptions& o, long long n) {
  if (o.m > 0) return o.m;
  return static_cast<int>(std::min<long long>(1 << 20, std::max<long long>(4096, 64 * n)));
}

Bounded times(Bounded b, double s) {
  b.value *= s;
  b.err *= s;
  return b;
}

struct Tails {
  Bounded tail, wt;  // absolute
};

Tails tails(const PsiSpec& spec, long long n) {
  const double s = std::exp(log_ref(spec, n));
  return {times(tail_sum_scaled(spec, n), s), times(weighted_tail_scaled(spec, n), s)};
}

Certified times(Certified c, double s) {
  c.lo *= s;
  c.hi *= s;
  return c;
}

Coefficient from_theta(const std::string& name, const ThetaEstimate& th) {
  return {name, th.theta, th.theta_lo, th.theta_hi, th.band_lo, th.band_hi};
}

// Band in value units from a ThetaEstimate, widened by the error of the leading terms.
Band band_from(const ThetaEstimate& th, const Certified& value, const std::string& form) {
  const double extra = std::max(0.0, th.err - value.err());
  return {th.value_lo - extra, th.value_hi + extra, form};
}

VerificationReport make(std::string id, const Certified& computed, Band band,
                        std::vector<Coefficient> coefs, std::string note = {}) {
  VerificationReport r;
  r.case_id = std::move(id);
  r.computed = computed;
  r.band = std::move(band);
  r.coefficients = std::move(coefs);
  r.note = std::move(note);
  r.status = classify(r.computed, r.band, r.coefficients);
  return r;
}

VerificationReport skipped(std::string id, std::string why) {
  VerificationReport r;
  r.case_id = std::move(id);
  r.status = Status::Skipped;
  r.note = std::move(why);
  return r;
}

// A failed band check reruns once with the seed grid doubled.
template <class F>
auto with_rerun(const VerifyOptions& o, long long n, F&& run) {
  auto out = run(grid_for(o, n));
  bool failed = false;
  if constexpr (std::is_same_v<decltype(out), VerificationReport>) {
    failed = out.status == Status::Fail;
  } else {
    for (const auto& r : out) failed = failed || r.status == Status::Fail;
  }
  if (failed) out = run(2 * grid_for(o, n));
  return out;
}

Certified class_sup_abs(const Kernel& k, const VerifyOptions& o, int m) {
  return times(class_supremum(k, o.tol, m), k.scale());
}

double psi_abs(const PsiSpec& spec, long long n) { return eval_psi(spec, n); }

bool is_geometric(const PsiSpec& s) {
  return s.family == Family::Geometric || (s.family == Family::GeneralizedPoisson && s.r == 1.0);
}

}  // namespace

std::string status_name(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Inconclusive: return "inconclusive";
    case Status::Skipped: return "skipped";
  }
  return "unknown";
}

Status classify(const Certified& c, const Band& band, const std::vector<Coefficient>& coefs) {
  const double width = band.hi - band.lo;
  if (width > 0.0 && (c.hi - c.lo) > width) return Status::Inconclusive;
  bool ok = c.hi >= band.lo && c.lo <= band.hi;
  for (const Coefficient& k : coefs) ok = ok && k.hi >= k.admissible_lo && k.lo <= k.admissible_hi;
  return ok ? Status::Pass : Status::Fail;
}

std::vector<VerificationReport> verify_kernel_norms(const PsiSpec& spec, double beta, long long n,
                                              const VerifyOptions& o) {
  const Timer timer;
  auto out = with_rerun(o, n, [&](int m) {
    const Kernel k(KernelSpec{spec, beta, n});
    const NormTriple t = kernel_norms(k, o.tol, m);
    const double s = k.scale();
    const Tails tw{times(t.tail, s), times(t.wt, s)};
    const Certified v[3] = {times(t.i1, s), times(t.i2, s), times(t.i3, s)};
    std::vector<VerificationReport> rs;
    for (int j = 0; j < 3; ++j) {
      const ThetaEstimate th = extract_theta(v[j], tw.tail, tw.wt, n, BandForm::KernelNorm);
      const std::string name = "I" + std::to_string(j + 1);
      rs.push_back(make(case_id("kernel_norms/" + name, spec, beta, n), v[j], band_from(th, v[j], "kernel_norm_band"),
                        {from_theta("Theta" + std::to_string(j + 1), th)}));
    }
    if (v[1].lo > v[0].hi) {
      rs[1].status = Status::Fail;
      rs[1].note = "ordering I2 <= I1 violated";
    }
    if (v[2].lo > v[1].hi) {
      rs[2].status = Status::Fail;
      rs[2].note = "ordering I3 <= I2 violated";
    }
    return rs;
  });
  timer.stamp(out, o);
  return out;
}

VerificationReport verify_class_sup(const PsiSpec& spec, double beta, long long n, const VerifyOptions& o) {
  const Timer timer;
  auto out = with_rerun(o, n, [&](int m) {
    const Kernel k(KernelSpec{spec, beta, n});
    const Certified c = class_sup_abs(k, o, m);
    const Tails tw = tails(spec, n);
    const ThetaEstimate th = extract_theta(c, tw.tail, tw.wt, n, BandForm::ClassSup);
    return make(case_id("class", spec, beta, n), c, band_from(th, c, "class_sup_band"), {from_theta("Theta2", th)});
  });
  timer.stamp(out, o);
  return out;
}

VerificationReport verify_geometric_exact(double alpha, double beta, long long n, const VerifyOptions& o) {
  const Timer timer;
  const PsiSpec spec = PsiSpec::geometric(alpha);
  auto out = with_rerun(o, n, [&](int m) {
    const Kernel k(KernelSpec{spec, beta, n});
    const Certified c = class_sup_abs(k, o, m);
    const double q = std::exp(-alpha);
    const double pn = std::exp(-alpha * static_cast<double>(n));
    const double lead = pn / (kPi * (1.0 - q));
    const double unit = pn * q / (static_cast<double>(n) * (1.0 - q) * (1.0 - q));
    const Tails tw = tails(spec, n);
    const double slack = 8.0 * std::numeric_limits<double>::epsilon() * lead;
    const Band band{lead - unit - slack, lead + slack, "geometric_exact"};
    Coefficient theta{"Theta", (c.mid() - lead) / unit, (c.lo - lead - slack) / unit, (c.hi - lead + slack) / unit,
                      -1.0, 0.0};
    const double ident = std::max(std::fabs(lead - tw.tail.value / kPi), std::fabs(unit - tw.wt.value / static_cast<double>(n))) / lead;
    Coefficient identity{"generic_band_rel_diff", ident, ident, ident, 0.0, 1e-12};
    return make(case_id("geometric_exact", spec, beta, n), c, band, {theta, identity});
  });
  timer.stamp(out, o);
  return out;
}

bool in_class_M(const PsiSpec& s) {
  switch (s.family) {
    case Family::Geometric:
    case Family::LogLogPower:
    case Family::ExpLogSquared:
    case Family::ExpOverLog:
      return true;
    case Family::GeneralizedPoisson:
      return s.r <= 1.0;
    default:
      return false;
  }
}

long long first_n_alpha_below(const PsiSpec& spec, double thr) {
  const SmoothnessProfile p(spec);
  auto ok = [&](long long n) { return p.alpha_at(static_cast<double>(n)) <= thr; };
  if (ok(1)) return 1;
  long long hi = 2;
  while (!ok(hi)) {
    if (hi > (1LL << 61)) return 0;
    hi *= 2;
  }
  long long lo = hi / 2;  // !ok(lo)
  while (hi - lo > 1) {
    const long long mid = lo + (hi - lo) / 2;
    (ok(mid) ? hi : lo) = mid;
  }
  return hi;
}

namespace {

// Two-parameter band psi(n) lambda(n) (1/pi + x1/lambda + x2 alpha) with x1, x2 in ranges.
struct MBand {
  double A = 0.0, lambda = 0.0, alpha = 0.0;
  double lo_coef = 0.0, hi_coef = 0.0;  // range of x1/lambda + x2 alpha
  Band band(double e, const std::string& form) const {
    return {A * (1.0 / kPi + lo_coef) * e, A * (1.0 / kPi + hi_coef) * e, form};
  }
};

MBand m_band(const PsiSpec& spec, long long n, double x1lo, double x1hi, double x2lo, double x2hi) {
  const SmoothnessProfile p(spec);
  MBand b;
  const double nd = static_cast<double>(n);
  b.lambda = p.lambda_at(nd);
  b.alpha = p.alpha_at(nd);
  b.A = psi_abs(spec, n) * b.lambda;
  b.lo_coef = x1lo / b.lambda + x2lo * b.alpha;
  b.hi_coef = x1hi / b.lambda + x2hi * b.alpha;
  return b;
}

Coefficient m_coef(const std::string& name, const MBand& b, const Certified& c, double e) {
  const double s = b.A * e;
  return {name, c.mid() / s - 1.0 / kPi, c.lo / s - 1.0 / kPi, c.hi / s - 1.0 / kPi, b.lo_coef, b.hi_coef};
}

std::vector<VerificationReport> lebesgue_upper(const PsiSpec& spec, double beta, long long n,
                                               const Certified& sup, double E, const std::string& what,
                                               const std::string& note) {
  std::vector<VerificationReport> rs;
  const Tails tw = tails(spec, n);
  const double bound = tw.tail.value / kPi * E;
  const double bound_err = tw.tail.err / kPi * E;
  const double ratio_den = std::max(bound, std::numeric_limits<double>::min());
  Coefficient ratio{"ratio", sup.mid() / ratio_den, sup.lo / ratio_den, sup.hi / ratio_den, 0.0, 1.0 + bound_err / ratio_den};
  rs.push_back(make(case_id(what, spec, beta, n), sup, {0.0, bound + bound_err, "lebesgue_upper"}, {ratio}, note));
  if (in_class_M(spec)) {
    const SmoothnessProfile p(spec);
    if (p.alpha_at(static_cast<double>(n)) < 0.25) {
      const MBand b = m_band(spec, n, 0.0, 4.0 / (3.0 * kPi), 0.0, 1.0 / kPi);
      Band band = b.band(E, "lebesgue_upper_M");
      band.lo = 0.0;
      Coefficient c = m_coef("xi3_over_lambda_plus_xi4_alpha", b, sup, E);
      c.admissible_lo = -kInf;
      rs.push_back(make(case_id(what + "/M", spec, beta, n), sup, band, {c}, note));
    }
  }
  return rs;
}

}  // namespace

std::vector<VerificationReport> verify_lebesgue(const PsiSpec& spec, double beta, long long n,
                                                        const TrigPoly& phi, const VerifyOptions& o) {
  const Timer timer;
  if (n < 1) throw DomainError("n must be >= 1");
  const L1ApproxResult best = best_l1(phi, n, 1e-9);
  const double E = std::max(0.0, best.value - best.gap);
  const TrigPoly rho = deviation(psi_integrate(phi, spec, beta), n);
  const Tails tw = tails(spec, n);
  const double tol = 1e-9 * std::max(tw.tail.value / kPi * std::max(E, 1e-300), std::numeric_limits<double>::min());
  const Certified sup = sup_abs(rho, tol);
  auto out = lebesgue_upper(spec, beta, n, sup, E, "lebesgue", "E_n(phi)_L1=" + fmt("%.17g", best.value));
  timer.stamp(out, o);
  return out;
}

std::vector<VerificationReport> verify_lebesgue(const PsiSpec& spec, double beta, long long n,
                                                        const GridFunction& phi, const VerifyOptions& o) {
  check(phi);
  const std::size_t m = phi.m();
  const int upto = static_cast<int>(m / 4);
  const TrigPoly p = fourier_coeffs(phi, upto);
  double scale = 0.0;
  for (double v : phi.values) scale = std::max(scale, std::fabs(v));
  int last = 0;
  for (int k = 1; k <= p.size(); ++k)
    if (std::fabs(p.a[k - 1]) > 1e-13 * scale || std::fabs(p.b[k - 1]) > 1e-13 * scale) last = k;
  TrigPoly q = p;
  q.resize(last);
  bool exact = last < upto;
  for (std::size_t j = 0; exact && j < m; ++j)
    exact = std::fabs(q.eval(phi.t(j)) - phi.values[j]) <= 1e-11 * std::max(scale, 1e-300);
  if (exact) return verify_lebesgue(spec, beta, n, q, o);

  const Timer timer;
  const L1ApproxResult best = best_l1(phi, n, 1e-9);
  const GridFunction rho = deviation(psi_integrate(phi, spec, beta), n);
  const Certified sup = sup_norm(rho, false);
  auto out = lebesgue_upper(spec, beta, n, sup, std::max(0.0, best.value - best.gap), "lebesgue_grid",
                            "grid values without a between-node certificate");
  timer.stamp(out, o);
  return out;
}

std::vector<VerificationReport> verify_extremal(const PsiSpec& spec, double beta, long long n, double e,
                                                const VerifyOptions& o) {
  const Timer timer;
  ExtremalConstruction c;
  SharpnessReport s;
  try {
    c = build_construction(KernelSpec{spec, beta, n}, e);
    s = sharpness(c, c.ell_star.m);
  } catch (const DegenerateConstruction& ex) {
    return {skipped(case_id("extremal", spec, beta, n), ex.what())};
  } catch (const UnsupportedError& ex) {
    return {skipped(case_id("extremal", spec, beta, n), ex.what())};
  }
  auto rs = verify_extremal(c, s);
  timer.stamp(rs, o);
  return rs;
}

std::vector<VerificationReport> verify_extremal(const ExtremalConstruction& c, const SharpnessReport& s) {
  const PsiSpec& spec = c.kspec.psi;
  const double beta = c.kspec.beta, e = c.e_target;
  const long long n = c.kspec.n;
  const std::string base = "extremal";
  std::vector<VerificationReport> rs;
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  const double l1_err = 16.0 * kEps * e;
  rs.push_back(make(case_id(base + "/phi_l1", spec, beta, n), {s.phi_l1 - l1_err, s.phi_l1 + l1_err, 0.0},
                    {e, e, "phi_l1"}, {}));
  const double rounding = static_cast<double>(s.grid_m) * kEps * e;
  const double berr = s.best.gap + rounding;
  const double pc = s.best.poly.max_coef();
  rs.push_back(make(case_id(base + "/best_l1", spec, beta, n), {s.best.value - berr, s.best.value + berr, 0.0},
                    {e, e, "phi_l1"}, {{"poly_max_coef", pc, pc, pc, 0.0, 1e-6 * e}}, "method=" + s.best.method));
  const Certified rho0{std::fabs(s.rho0.value) - s.rho0.err, std::fabs(s.rho0.value) + s.rho0.err, 0.0};
  rs.push_back(make(case_id(base + "/rho_at_0", spec, beta, n), rho0, {s.lower_bound, s.upper_bound, "rho_at_zero"}, {}));
  rs.push_back(make(case_id(base + "/pairing", spec, beta, n), rho0, {s.pairing_bound, s.upper_bound, "pairing"}, {}));
  rs.push_back(make(case_id(base + "/xi", spec, beta, n), s.rho_sup, band_from(s.xi, s.rho_sup, "sharpness_band"),
                    {from_theta("xi", s.xi)}, "sup attained at x=" + fmt("%.17g", s.rho_sup.arg)));
  if (in_class_M(spec)) {
    const SmoothnessProfile p(spec);
    if (p.alpha_at(static_cast<double>(n)) < 0.25) {
      const MBand b = m_band(spec, n, -2.0, 2.0 + 1.0 / kPi, -8.0, 4.0 / 3.0 * (2.0 + 1.0 / kPi));
      rs.push_back(make(case_id(base + "/M", spec, beta, n), s.rho_sup, b.band(e, "sharpness_M"),
                        {m_coef("xi5_over_lambda_plus_xi6_alpha", b, s.rho_sup, e)}));
    }
  }
  return rs;
}

VerificationReport verify_M_class(const PsiSpec& spec, double beta, long long n, const VerifyOptions& o) {
  const Timer timer;
  const std::string id = case_id("M_class", spec, beta, n);
  if (!in_class_M(spec)) return skipped(id, "family is not in class M");
  const SmoothnessProfile p(spec);
  const double a = p.alpha_at(static_cast<double>(n));
  if (a > 0.25) return skipped(id, "precondition alpha(n) <= 1/4 unmet: alpha=" + fmt("%.17g", a));
  auto out = with_rerun(o, n, [&](int m) {
    const Kernel k(KernelSpec{spec, beta, n});
    const Certified c = class_sup_abs(k, o, m);
    const MBand b = m_band(spec, n, -1.0, 1.0 + 1.0 / kPi, -4.0, 4.0 / 3.0 * (1.0 + 1.0 / kPi));
    return make(id, c, b.band(1.0, "class_sup_M"), {m_coef("xi1_over_lambda_plus_xi2_alpha", b, c, 1.0)},
                "alpha=" + fmt("%.17g", b.alpha) + " lambda=" + fmt("%.17g", b.lambda));
  });
  timer.stamp(out, o);
  return out;
}

namespace {

struct Residual {
  long long n = 0;
  double value = 0.0, err = 0.0;
};

// Boundedness over a sweep: the largest |R| on the second half may not exceed twice
// the largest on the first half plus 1/pi.
VerificationReport boundedness(const std::string& id, const std::vector<Residual>& rs, const std::string& form,
                               const std::string& gate_note) {
  if (rs.empty()) return skipped(id, gate_note.empty() ? "no admissible n in range" : gate_note);
  const std::size_t half = (rs.size() + 1) / 2;
  double first = 0.0, first_err = 0.0, all = 0.0;
  Certified second{0.0, 0.0, 0.0};
  std::ostringstream note;
  note << std::setprecision(6);
  for (std::size_t i = 0; i < rs.size(); ++i) {
    const double a = std::fabs(rs[i].value);
    all = std::max(all, a);
    if (i < half) {
      first = std::max(first, a);
      first_err = std::max(first_err, rs[i].err);
    }
    if (i >= rs.size() - half) {
      second.lo = std::max(second.lo, a - rs[i].err);
      second.hi = std::max(second.hi, a + rs[i].err);
      second.arg = static_cast<double>(rs[i].n);
    }
    note << (i ? " " : "R: ") << rs[i].n << ":" << rs[i].value;
  }
  if (!gate_note.empty()) note << "; " << gate_note;
  second.lo = std::max(0.0, second.lo);
  const double cap = 2.0 * (first + first_err) + 1.0 / kPi;
  return make(id, second, {0.0, cap, form}, {{"empirical_constant", all, all, all, 0.0, kInf}}, note.str());
}

}  // namespace

namespace {

struct ClassData {
  Certified cs;  // class supremum, absolute
  Tails tw;
  double pn = 0.0;  // psi(n)
};

ClassData class_data(const PsiSpec& spec, double beta, long long n, const VerifyOptions& o) {
  const Kernel k(KernelSpec{spec, beta, n});
  return {class_sup_abs(k, o, grid_for(o, n)), tails(spec, n), psi_abs(spec, n)};
}

// Normalized residual of a corollary: (computed - leading term) / (the O(1) factor's
// multiplier). NaN when the form does not apply to the family or its gate is unmet.
Residual corollary_residual(const std::string& form, const PsiSpec& spec, long long n, const ClassData& d) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double nd = static_cast<double>(n);
  const double al = spec.alpha, rr = spec.r;
  const double v = d.cs.mid(), e = d.cs.err(), pn = d.pn;
  auto res = [&](double lead, double unit) { return Residual{n, (v - lead) / unit, e / unit}; };
  if (form == "general_tail") {
    const double S1 = d.tw.wt.value + nd * (d.tw.tail.value - pn);  // sum_{k>n} k psi(k)
    if (!(S1 > 0.0)) return {n, nan, nan};
    return res(pn / kPi, S1 / nd);
  }
  if (form == "geometric_exact" && is_geometric(spec)) {
    const double q = std::exp(-al);
    return res(pn / (kPi * (1.0 - q)), pn * q / (nd * (1.0 - q) * (1.0 - q)));
  }
  if (form == "dq_estimate" && is_geometric(spec)) {
    const DqReport dq = dq_report(spec, n);
    if (!dq.admissible) return {n, nan, nan};
    const double q = dq.q, w = (1.0 - q) * (1.0 - q);
    return res(pn / (kPi * (1.0 - q)), pn * (q / (nd * w) + dq.epsilon_n / w));
  }
  if (form == "gp_fast" && spec.family == Family::GeneralizedPoisson && rr > 1.0) {
    if (nd < std::pow(3.0 / (al * rr), 1.0 / rr) - 1.0) return {n, nan, nan};
    return res(pn / kPi, pn * std::exp(-al * rr * std::pow(nd, rr - 1.0)) *
                             (1.0 + 1.0 / (al * rr * std::pow(nd + 1.0, rr - 2.0))));
  }
  if (form == "gp_slow" && spec.family == Family::GeneralizedPoisson && rr < 1.0) {
    if (nd < std::pow(4.0 / (al * rr), 1.0 / rr)) return {n, nan, nan};
    const double lead = pn * std::pow(nd, 1.0 - rr);
    return res(lead / (kPi * al * rr), lead * (1.0 / (al * al * rr * rr * std::pow(nd, rr)) + 1.0 / std::pow(nd, 1.0 - rr)));
  }
  if (form == "loglog" && spec.family == Family::LogLogPower) {
    const double l = std::log(std::log(nd + 2.0));
    return res(pn * nd / (kPi * l), pn * nd / (l * l));
  }
  if (form == "explog2" && spec.family == Family::ExpLogSquared) {
    const double l = std::log(nd + 1.0);
    return res(pn * nd / (2.0 * kPi * l), pn * nd / (l * l));
  }
  if (form == "expoverlog" && spec.family == Family::ExpOverLog) return res(pn * std::log(nd + 2.0) / kPi, pn);
  return {n, nan, nan};
}

// The family-specific corollary, general_tail for tables.
std::string primary_form(const PsiSpec& spec) {
  switch (spec.family) {
    case Family::Geometric: return "geometric_exact";
    case Family::GeneralizedPoisson: return spec.r > 1.0 ? "gp_fast" : spec.r < 1.0 ? "gp_slow" : "geometric_exact";
    case Family::LogLogPower: return "loglog";
    case Family::ExpLogSquared: return "explog2";
    case Family::ExpOverLog: return "expoverlog";
    default: return "general_tail";
  }
}

}  // namespace

std::vector<VerificationReport> verify_corollaries(const PsiSpec& spec, double beta,
                                                   const std::vector<long long>& n_range, const VerifyOptions& o) {
  const Timer timer;
  std::vector<VerificationReport> out;
  if (n_range.empty()) return out;
  const std::string tag = spec_label(spec) + "/beta=" + fmt("%.6g", beta);
  std::vector<ClassData> d;
  for (long long n : n_range) d.push_back(class_data(spec, beta, n, o));

  if (is_geometric(spec))
    for (long long n : n_range) out.push_back(verify_geometric_exact(spec.alpha, beta, n, o));

  std::vector<std::string> forms{"general_tail"};
  if (is_geometric(spec)) forms.push_back("dq_estimate");
  if (const std::string f = primary_form(spec); f != "general_tail" && f != "geometric_exact") forms.push_back(f);
  for (const std::string& form : forms) {
    std::vector<Residual> r;
    std::string gated;
    for (std::size_t i = 0; i < n_range.size(); ++i) {
      const Residual x = corollary_residual(form, spec, n_range[i], d[i]);
      if (std::isnan(x.value)) {
        gated += (gated.empty() ? "gated out n:" : ",") + std::to_string(n_range[i]);
        continue;
      }
      r.push_back(x);
    }
    out.push_back(boundedness("corollary/" + form + "/" + tag, r, form, gated));
    if (form != "gp_fast" || r.size() < 2) continue;
    // the unnormalized residual e^{alpha n^r} E_n - 1/pi must decay
    std::vector<double> raw;
    for (std::size_t i = 0; i < n_range.size(); ++i)
      if (!std::isnan(corollary_residual(form, spec, n_range[i], d[i]).value))
        raw.push_back(std::fabs(d[i].cs.mid() / d[i].pn - 1.0 / kPi));
    bool decreasing = true;
    for (std::size_t i = 1; i < raw.size(); ++i) decreasing = decreasing && raw[i] < raw[i - 1];
    VerificationReport rep = make("corollary/gp_fast_decay/" + tag, {raw.back(), raw.back(), 0.0}, {0.0, raw.front(), "gp_fast"}, {});
    if (!decreasing) {
      rep.status = Status::Fail;
      rep.note = "raw residual not decreasing";
    }
    out.push_back(rep);
  }
  timer.stamp(out, o);
  return out;
}

std::vector<SweepRow> sweep(const PsiSpec& spec, double beta, const std::vector<long long>& n_range,
                            const VerifyOptions& o) {
  std::vector<SweepRow> rows(n_range.size());
  const std::string form = primary_form(spec);
  const bool m_class = in_class_M(spec);
#pragma omp parallel for schedule(dynamic, 1)
  for (long long i = 0; i < static_cast<long long>(n_range.size()); ++i) {
    const long long n = n_range[i];
    SweepRow& r = rows[i];
    r.n = n;
    r.asymp_ratio = asymp_ratio(spec, n);
    r.alpha_model = std::numeric_limits<double>::quiet_NaN();
    if (m_class) {
      const double a = SmoothnessProfile(spec).alpha_at(static_cast<double>(n));
      r.alpha_model = a / (1.0 - a);
    }
    const ClassData d = class_data(spec, beta, n, o);
    r.class_sup = d.cs;
    r.form = form;
    const Residual x = corollary_residual(form, spec, n, d);
    r.residual = x.value;
    r.residual_err = x.err;
  }
  return rows;
}

VerificationReport verify_asymp_condition(const PsiSpec& spec, const std::vector<long long>& n_range,
                                          double threshold) {
  const std::string id = "asymp_condition/" + spec_label(spec);
  if (n_range.empty()) return skipped(id, "empty range");
  std::vector<double> r;
  for (long long n : n_range) r.push_back(asymp_ratio(spec, n));
  bool decreasing = true;
  for (std::size_t i = 1; i < r.size(); ++i) decreasing = decreasing && r[i] < r[i - 1];
  std::vector<Coefficient> coefs;
  if (is_geometric(spec)) {
    const double q = std::exp(-spec.alpha);
    double worst = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
      const double exact = q / (static_cast<double>(n_range[i]) * (1.0 - q));
      worst = std::max(worst, std::fabs(r[i] - exact) / exact);
    }
    coefs.push_back({"closed_form_rel_err", worst, worst, worst, 0.0, 1e-12});
  } else if (in_class_M(spec)) {
    const SmoothnessProfile p(spec);
    const double a = p.alpha_at(static_cast<double>(n_range.back()));
    const double ratio = r.back() / (a / (1.0 - a));
    coefs.push_back({"ratio_over_alpha_model", ratio, ratio, ratio, -kInf, kInf});
  }
  std::ostringstream note;
  note << std::setprecision(17);
  for (std::size_t i = 0; i < r.size(); ++i) note << (i ? " " : "ratios: ") << n_range[i] << ":" << r[i];
  VerificationReport out = make(id, {r.back(), r.back(), static_cast<double>(n_range.back())},
                                {0.0, threshold, "AsympCondition"}, coefs, note.str());
  if (!decreasing) {
    out.status = Status::Fail;
    out.note += "; not strictly decreasing";
  }
  return out;
}

namespace {

std::vector<long long> iota_range(long long a, long long b) {
  std::vector<long long> v;
  for (long long n = a; n <= b; ++n) v.push_back(n);
  return v;
}

TrigPoly random_phi(int degree, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  TrigPoly p(degree);
  for (int k = 0; k < degree; ++k) {
    p.a[k] = std::ldexp(static_cast<double>(rng() >> 11), -53) * 2.0 - 1.0;
    p.b[k] = std::ldexp(static_cast<double>(rng() >> 11), -53) * 2.0 - 1.0;
  }
  return p;
}

TrigPoly cos_poly(int k) {
  TrigPoly p(k);
  p.a[k - 1] = 1.0;
  return p;
}

using Task = std::function<std::vector<VerificationReport>()>;

template <class F>
Task one(F f) {
  return [f] { return std::vector<VerificationReport>{f()}; };
}

std::vector<Task> quick_tasks(const VerifyOptions& o) {
  const PsiSpec g = PsiSpec::geometric_q(0.5);
  std::vector<Task> t;
  t.push_back([=] { return verify_kernel_norms(g, 0.7, 8, o); });
  for (long long n = 1; n <= 4; ++n) t.push_back(one([=] { return verify_class_sup(g, 0.0, n, o); }));
  for (long long n = 1; n <= 4; ++n) t.push_back(one([=] { return verify_geometric_exact(1.0, 0.0, n, o); }));
  t.push_back([=] { return verify_extremal(g, 0.0, 2, 1.0, o); });
  t.push_back([=] { return verify_lebesgue(g, 0.0, 4, cos_poly(12), o); });
  const PsiSpec eol = PsiSpec::exp_over_log();
  t.push_back(one([=] { return verify_M_class(eol, 0.0, first_n_alpha_below(eol), o); }));
  t.push_back(one([=] { return verify_asymp_condition(g, {10, 100, 1000, 10000}); }));
  return t;
}

std::vector<Task> default_tasks(const VerifyOptions& o) {
  std::vector<Task> t;
  const PsiSpec g5 = PsiSpec::geometric_q(0.5);
  const PsiSpec gp2 = PsiSpec::generalized_poisson(1.0, 2.0);
  const PsiSpec gph = PsiSpec::generalized_poisson(1.0, 0.5);
  const PsiSpec llp = PsiSpec::loglog_power();
  const PsiSpec els = PsiSpec::exp_log_squared();
  const PsiSpec eol = PsiSpec::exp_over_log();

  t.push_back([=] { return verify_kernel_norms(g5, 0.7, 8, o); });
  t.push_back([=] { return verify_kernel_norms(PsiSpec::geometric_q(0.9), 1.3, 4, o); });
  for (long long n : {1LL, 16LL}) t.push_back([=] { return verify_kernel_norms(PsiSpec::geometric_q(0.3), 0.0, n, o); });
  t.push_back([=] { return verify_kernel_norms(PsiSpec::single(5), 0.0, 5, o); });

  for (double beta : {0.0, 0.5, 1.0, 1.5})
    for (long long n = 1; n <= 16; ++n) t.push_back(one([=] { return verify_class_sup(g5, beta, n, o); }));
  t.push_back(one([=] { return verify_class_sup(PsiSpec::single(5), 0.0, 5, o); }));

  for (long long n : {2LL, 4LL, 8LL}) {
    t.push_back([=] { return verify_lebesgue(g5, 0.0, n, cos_poly(static_cast<int>(3 * n)), o); });
    t.push_back([=] { return verify_lebesgue(g5, 0.0, n, cos_poly(static_cast<int>(n)), o); });
    t.push_back([=] { return verify_lebesgue(gp2, 1.0, n, random_phi(static_cast<int>(4 * n), 1000 + n), o); });
  }

  for (double beta : {0.0, 1.0})
    for (long long n : {2LL, 4LL, 8LL}) t.push_back([=] { return verify_extremal(g5, beta, n, 1.0, o); });
  t.push_back([=] { return verify_extremal(eol, 0.0, first_n_alpha_below(eol), 1.0, o); });
  t.push_back([=] { return verify_extremal(PsiSpec::single(5), 0.0, 5, 1.0, o); });

  for (const PsiSpec& s : {llp, els, eol}) {
    const long long n0 = first_n_alpha_below(s);
    for (long long n = n0; n < n0 + 3; ++n) t.push_back(one([=] { return verify_M_class(s, 0.0, n, o); }));
  }
  t.push_back(one([=] { return verify_M_class(gph, 0.5, 64, o); }));
  t.push_back(one([=] { return verify_M_class(gp2, 0.0, 4, o); }));

  t.push_back([=] { return verify_corollaries(PsiSpec::geometric(1.0), 0.0, iota_range(1, 12), o); });
  t.push_back([=] { return verify_corollaries(gp2, 0.0, iota_range(2, 8), o); });
  t.push_back([=] { return verify_corollaries(gph, 0.0, {64, 100, 200, 400}, o); });
  t.push_back([=] { return verify_corollaries(els, 0.0, {10, 30, 100, 300}, o); });
  t.push_back([=] { return verify_corollaries(eol, 0.0, {20, 50, 100, 200, 500}, o); });
  const long long n0 = first_n_alpha_below(llp);
  t.push_back([=] { return verify_corollaries(llp, 0.0, {n0, 1000000000LL, 10000000000LL, 100000000000LL}, o); });

  const std::vector<long long> decades{10, 100, 1000, 10000};
  for (const PsiSpec& s : {g5, llp, els, eol}) t.push_back(one([=] { return verify_asymp_condition(s, decades); }));
  return t;
}

}  // namespace

std::vector<VerificationReport> run_suite(const std::string& name, const VerifyOptions& o) {
  std::vector<Task> tasks;
  if (name == "default") tasks = default_tasks(o);
  else if (name == "quick") tasks = quick_tasks(o);
  else throw DomainError("unknown suite: " + name);
  std::vector<std::vector<VerificationReport>> parts(tasks.size());
  std::vector<std::string> errors(tasks.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long long i = 0; i < static_cast<long long>(tasks.size()); ++i) {
    try {
      parts[i] = tasks[i]();
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  }
  std::vector<VerificationReport> out;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    if (!errors[i].empty()) {
      VerificationReport r;
      r.case_id = name + "/task" + std::to_string(i);
      r.status = Status::Fail;
      r.note = "error: " + errors[i];
      out.push_back(r);
    }
    for (auto& r : parts[i]) out.push_back(std::move(r));
  }
  return out;
}

SuiteSummary summarize(const std::vector<VerificationReport>& reports) {
  SuiteSummary s;
  for (const auto& r : reports) {
    switch (r.status) {
      case Status::Pass: ++s.pass; break;
      case Status::Fail: ++s.fail; break;
      case Status::Inconclusive: ++s.inconclusive; break;
      case Status::Skipped: ++s.skipped; break;
    }
  }
  return s;
}

void write_summary_table(std::ostream& os, const std::vector<VerificationReport>& reports) {
  std::size_t w = 7;
  for (const auto& r : reports) w = std::max(w, r.case_id.size());
  os << std::left << std::setw(static_cast<int>(w)) << "case" << "  " << std::setw(12) << "status"
     << "computed\n";
  for (const auto& r : reports) {
    os << std::left << std::setw(static_cast<int>(w)) << r.case_id << "  " << std::setw(12) << status_name(r.status);
    if (r.status != Status::Skipped) os << std::setprecision(17) << r.computed.mid();
    os << "\n";
  }
  const SuiteSummary s = summarize(reports);
  os << "pass " << s.pass << ", fail " << s.fail << ", inconclusive " << s.inconclusive << ", skipped "
     << s.skipped << "\n";
}

namespace {

nlohmann::json finite_or_null(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

}  // namespace

void to_json(nlohmann::json& j, const Band& b) {
  j = nlohmann::json{{"lo", finite_or_null(b.lo)}, {"hi", finite_or_null(b.hi)}, {"form", b.form}};
}

void to_json(nlohmann::json& j, const Coefficient& c) {
  j = nlohmann::json{{"name", c.name},
                     {"value", finite_or_null(c.value)},
                     {"lo", finite_or_null(c.lo)},
                     {"hi", finite_or_null(c.hi)},
                     {"admissible", {finite_or_null(c.admissible_lo), finite_or_null(c.admissible_hi)}}};
}

void to_json(nlohmann::json& j, const VerificationReport& r) {
  j = nlohmann::json{{"case_id", r.case_id},
                     {"status", status_name(r.status)},
                     {"pass", r.pass()},
                     {"computed", r.computed},
                     {"band", r.band},
                     {"coefficients", r.coefficients},
                     {"note", r.note}};
  if (r.runtime_ms >= 0.0) j["runtime_ms"] = r.runtime_ms;
}

}  // namespace fl
