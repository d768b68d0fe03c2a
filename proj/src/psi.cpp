#include "fl/psi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fl/errors.hpp"
#include "fl/quadrature.hpp"

namespace fl {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kInf = std::numeric_limits<double>::infinity();

// Neumaier compensated sum.
struct KahanSum {
  double s = 0.0, c = 0.0;
  void add(double x) {
    const double t = s + x;
    if (std::fabs(s) >= std::fabs(x)) c += (s - t) + x;
    else c += (x - t) + s;
    s = t;
  }
  double value() const { return s + c; }
};

double ipow(double x, int p) {
  double r = 1.0;
  for (int i = 0; i < p; ++i) r *= x;
  return r;
}

}  // namespace

PsiSpec PsiSpec::geometric(double alpha) {
  PsiSpec s;
  s.family = Family::Geometric;
  s.alpha = alpha;
  return s;
}

PsiSpec PsiSpec::geometric_q(double q) {
  if (!(q > 0.0 && q < 1.0)) throw DomainError("geometric ratio q must lie in (0,1)");
  return geometric(-std::log(q));
}

PsiSpec PsiSpec::generalized_poisson(double alpha, double r) {
  PsiSpec s;
  s.family = Family::GeneralizedPoisson;
  s.alpha = alpha;
  s.r = r;
  return s;
}

PsiSpec PsiSpec::loglog_power() {
  PsiSpec s;
  s.family = Family::LogLogPower;
  return s;
}

PsiSpec PsiSpec::exp_log_squared() {
  PsiSpec s;
  s.family = Family::ExpLogSquared;
  return s;
}

PsiSpec PsiSpec::exp_over_log() {
  PsiSpec s;
  s.family = Family::ExpOverLog;
  return s;
}

PsiSpec PsiSpec::finite_support(std::vector<double> values) {
  PsiSpec s;
  s.family = Family::FiniteSupport;
  s.values = std::move(values);
  return s;
}

PsiSpec PsiSpec::single(long long k, double value) {
  if (k < 1) throw DomainError("support index must be >= 1");
  std::vector<double> v(static_cast<std::size_t>(k), 0.0);
  v.back() = value;
  return finite_support(std::move(v));
}

PsiSpec PsiSpec::user_table(std::vector<double> values, bool interpolate) {
  PsiSpec s;
  s.family = Family::UserTable;
  s.values = std::move(values);
  s.interpolate = interpolate;
  return s;
}

long long PsiSpec::support_end() const {
  if (!is_table()) return 0;
  long long end = static_cast<long long>(values.size());
  while (end > 0 && values[end - 1] == 0.0) --end;
  return end;
}

void validate(const PsiSpec& s) {
  switch (s.family) {
    case Family::Geometric:
      if (!(s.alpha > 0.0) || !std::isfinite(s.alpha)) throw DomainError("geometric alpha must be > 0");
      break;
    case Family::GeneralizedPoisson:
      if (!(s.alpha > 0.0) || !(s.r > 0.0)) throw DomainError("generalized Poisson needs alpha > 0, r > 0");
      break;
    case Family::FiniteSupport:
    case Family::UserTable:
      if (s.values.empty()) throw DomainError("empty psi table");
      for (double v : s.values)
        if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError("psi table entries must be finite and >= 0");
      break;
    default:
      break;
  }
}

std::string family_name(Family f) {
  switch (f) {
    case Family::Geometric: return "geometric";
    case Family::GeneralizedPoisson: return "generalized_poisson";
    case Family::LogLogPower: return "loglog_power";
    case Family::ExpLogSquared: return "exp_log_squared";
    case Family::ExpOverLog: return "exp_over_log";
    case Family::FiniteSupport: return "finite";
    case Family::UserTable: return "user_table";
  }
  return "unknown";
}

Family parse_family(const std::string& name) {
  if (name == "geometric" || name == "poisson1") return Family::Geometric;
  if (name == "generalized_poisson" || name == "poisson" || name == "gpoisson") return Family::GeneralizedPoisson;
  if (name == "loglog_power" || name == "loglog") return Family::LogLogPower;
  if (name == "exp_log_squared" || name == "explog2") return Family::ExpLogSquared;
  if (name == "exp_over_log" || name == "expoverlog") return Family::ExpOverLog;
  if (name == "finite" || name == "finite_support") return Family::FiniteSupport;
  if (name == "user_table" || name == "table") return Family::UserTable;
  throw DomainError("unknown psi family: " + name);
}

LogDerivs log_derivs(const PsiSpec& s, double t) {
  switch (s.family) {
    case Family::Geometric:
      return {-s.alpha * t, -s.alpha, 0.0};
    case Family::GeneralizedPoisson: {
      const double tr = std::pow(t, s.r);
      const double ar = s.alpha * s.r;
      return {-s.alpha * tr, -ar * tr / t, -ar * (s.r - 1.0) * tr / (t * t)};
    }
    case Family::LogLogPower: {
      const double u = t + 2.0, L = std::log(u), lL = std::log(L);
      return {-L * lL, -(lL + 1.0) / u, (lL + 1.0 - 1.0 / L) / (u * u)};
    }
    case Family::ExpLogSquared: {
      const double u = t + 1.0, L = std::log(u);
      return {-L * L, -2.0 * L / u, (2.0 * L - 2.0) / (u * u)};
    }
    case Family::ExpOverLog: {
      const double u = t + 2.0, L = std::log(u);
      return {-u / L, -(L - 1.0) / (L * L), (1.0 / (L * L) - 2.0 / (L * L * L)) / u};
    }
    default:
      throw UnsupportedError("no closed-form derivatives for tabulated psi");
  }
}

double log_convex_from(const PsiSpec& s) {
  switch (s.family) {
    case Family::Geometric: return 1.0;
    case Family::GeneralizedPoisson: return s.r <= 1.0 ? 1.0 : kInf;
    case Family::LogLogPower: return 1.0;
    case Family::ExpLogSquared: return std::exp(1.0) - 1.0;        // ln(t+1) >= 1
    case Family::ExpOverLog: return std::exp(2.0) - 2.0;           // ln(t+2) >= 2
    default: return kInf;
  }
}

double eval_psi(const PsiSpec& s, long long k) {
  if (k < 1) throw DomainError("psi is indexed from k = 1");
  if (s.is_table()) {
    if (k <= static_cast<long long>(s.values.size())) return s.values[k - 1];
    if (s.family == Family::FiniteSupport) return 0.0;
    throw DomainError("index beyond the user table");
  }
  return std::exp(log_derivs(s, static_cast<double>(k)).l0);
}

double psi_at(const PsiSpec& s, double t) {
  if (s.family == Family::UserTable && s.interpolate) {
    const double K = static_cast<double>(s.values.size());
    if (t < 1.0 || t > K) throw DomainError("interpolant evaluated outside the table");
    const std::size_t i = std::min(static_cast<std::size_t>(t) - 1, s.values.size() - 1);
    if (i + 1 >= s.values.size()) return s.values.back();
    const double w = t - static_cast<double>(i + 1);
    return (1.0 - w) * s.values[i] + w * s.values[i + 1];
  }
  if (s.is_table()) throw UnsupportedError("tabulated psi has no continuous extension");
  return std::exp(log_derivs(s, t).l0);
}

SmoothnessProfile::SmoothnessProfile(const PsiSpec& spec) : spec_(spec) {
  if (spec.is_table()) throw UnsupportedError("characteristics need closed-form derivatives");
  validate(spec);
}

double SmoothnessProfile::lambda_at(double t) const { return 1.0 / std::fabs(log_derivs(spec_, t).l1); }

double SmoothnessProfile::alpha_at(double t) const { return lambda_at(t) / t; }

double SmoothnessProfile::eta_at(double t) const {
  const double target = log_derivs(spec_, t).l0 - std::log(2.0);
  auto ell = [&](double x) { return log_derivs(spec_, x).l0; };
  double lo = t, hi = t + 8.0 * lambda_at(t);
  for (int i = 0; i < 200 && ell(hi) >= target; ++i) hi = t + 2.0 * (hi - t);
  for (int i = 0; i < 400 && hi - lo > 1e-12 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (ell(mid) >= target) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

double SmoothnessProfile::mu_at(double t) const { return t / (eta_at(t) - t); }

SmoothnessProfile characteristics(const PsiSpec& spec) { return SmoothnessProfile(spec); }

double log_ref(const PsiSpec& s, long long n) {
  if (s.is_table()) return 0.0;
  return log_derivs(s, static_cast<double>(std::max(n, 1LL))).l0;
}

namespace {

// Upper bound on sum_{k>=K} k^p psi(k) / exp(ref), from monotonicity of k^p psi and
// integration by parts with nonincreasing alpha. Infinite when (p+1) alpha(K) >= 1.
double tail_bound(const PsiSpec& s, double K, int p, double ref) {
  const LogDerivs d = log_derivs(s, K);
  if (d.l1 >= 0.0) return kInf;
  const double alpha = 1.0 / (K * std::fabs(d.l1));
  if ((p + 1) * alpha >= 1.0) return kInf;
  const double head = std::exp(p * std::log(K) + d.l0 - ref);
  return head * (1.0 + K * alpha / (1.0 - (p + 1) * alpha));
}

// Tail of the integral beyond X, same argument.
double integral_tail_bound(const PsiSpec& s, double X, int p, double ref) {
  const LogDerivs d = log_derivs(s, X);
  if (d.l1 >= 0.0) return kInf;
  const double alpha = 1.0 / (X * std::fabs(d.l1));
  if ((p + 1) * alpha >= 1.0) return kInf;
  return alpha * std::exp((p + 1) * std::log(X) + d.l0 - ref) / (1.0 - (p + 1) * alpha);
}

bool em_applicable(const PsiSpec& s, double K, int p) {
  if (K < log_convex_from(s)) return false;
  const double alpha = 1.0 / (K * std::fabs(log_derivs(s, K).l1));
  return p == 0 || alpha <= 1.0 / (p + std::sqrt(static_cast<double>(p)));
}

// sum_{k>=K} k^j psi(k) / exp(ref) for convex decreasing x^j psi on [K, inf):
// integral + f(K)/2 + E with 0 <= E <= |f'(K)|/8.
Bounded em_moment(const PsiSpec& s, double K, int j, double ref) {
  const Bounded I = integral_scaled(s, K, j, ref, 1e-15);
  const LogDerivs d = log_derivs(s, K);
  const double f = std::exp(j * std::log(K) + d.l0 - ref);
  const double fp = f * std::fabs(d.l1 + j / K);
  return {I.value + 0.5 * f + fp / 16.0, I.err + fp / 16.0 + 4 * kEps * (I.value + f)};
}

Bounded named_series(const PsiSpec& s, long long a, double c, int p, double ref) {
  constexpr long long kBudget = 1'000'000;
  constexpr long long kHardCap = 200'000'000;
  KahanSum sum;
  long long k = a;
  for (;;) {
    if ((k - a) % 32 == 0) {
      const double R = tail_bound(s, static_cast<double>(k), p, ref);
      const double partial = sum.value();
      if (R == 0.0 || R <= 1e-17 * partial) {
        return {partial + 0.5 * R, 0.5 * R + 4 * kEps * partial};
      }
      const double Kd = static_cast<double>(k);
      if (k - a >= kBudget && em_applicable(s, Kd, p)) {
        // binomial expansion of (k - c)^p over moments of order j <= p
        Bounded out{partial, 4 * kEps * partial};
        const double binom[3][3] = {{1, 0, 0}, {1, 1, 0}, {1, 2, 1}};
        for (int j = 0; j <= p; ++j) {
          const double coef = binom[p][j] * ipow(-c, p - j);
          if (coef == 0.0) continue;
          const Bounded m = em_moment(s, Kd, j, ref);
          out.value += coef * m.value;
          out.err += std::fabs(coef) * (m.err + 4 * kEps * m.value);
        }
        return out;
      }
      if (k - a >= kHardCap) throw DivergenceError("series did not reach its tail bound");
    }
    const double kd = static_cast<double>(k);
    sum.add(ipow(kd - c, p) * std::exp(log_derivs(s, kd).l0 - ref));
    ++k;
  }
}

}  // namespace

Bounded series_scaled(const PsiSpec& s, long long a, double c, int p, double ref) {
  if (p < 0 || p > 2) throw DomainError("moment order must be 0, 1 or 2");
  a = std::max(a, 1LL);
  if (c > static_cast<double>(a) || c < 0.0) throw DomainError("shift must satisfy 0 <= c <= a");
  validate(s);
  switch (s.family) {
    case Family::Geometric: {
      const double q = std::exp(-s.alpha), omq = -std::expm1(-s.alpha);
      const double d = static_cast<double>(a) - c;
      const double S0 = 1.0 / omq, S1 = q / (omq * omq), S2 = q * (1.0 + q) / (omq * omq * omq);
      double core = S0;
      if (p == 1) core = S1 + d * S0;
      if (p == 2) core = S2 + 2.0 * d * S1 + d * d * S0;
      const double v = std::exp(-s.alpha * static_cast<double>(a) - ref) * core;
      return {v, 16 * kEps * v};
    }
    case Family::FiniteSupport:
    case Family::UserTable: {
      KahanSum sum;
      const long long end = static_cast<long long>(s.values.size());
      for (long long k = a; k <= end; ++k) sum.add(ipow(static_cast<double>(k) - c, p) * s.values[k - 1]);
      const double v = sum.value() * std::exp(-ref);
      return {v, 4 * kEps * v};
    }
    default:
      return named_series(s, a, c, p, ref);
  }
}

Bounded integral_scaled(const PsiSpec& s, double a, int p, double ref, double rel_tol) {
  if (s.is_table()) throw UnsupportedError("integrals need a continuous extension");
  if (a < 1.0) throw DomainError("integral lower limit must be >= 1");
  const double la = std::log(a);
  auto g = [&](double u) {
    return std::exp((p + 1) * (la + u) + log_derivs(s, a * std::exp(u)).l0 - ref);
  };
  const double lam = 1.0 / std::fabs(log_derivs(s, a).l1);
  double du = std::min(1.0, 2.0 * lam / a);
  double U = 0.0, total = 0.0, err = 0.0;
  for (int it = 0; it < 10000; ++it) {
    const double tol_abs = total > 0.0 ? 0.1 * rel_tol * total : 0.0;
    const QuadResult r = integrate_gk21(g, U, U + du, tol_abs, 0.1 * rel_tol, 4000);
    total += r.value;
    err += r.err;
    U += du;
    du = std::min(2.0 * du, 2.0);
    const double X = a * std::exp(U);
    const double tb = integral_tail_bound(s, X, p, ref);
    if (tb <= rel_tol * total || (tb == 0.0)) {
      return {total + 0.5 * tb, err + 0.5 * tb + 8 * kEps * total};
    }
    if (U > 690.0) break;
  }
  throw ToleranceError("integral tail did not meet its bound");
}

Bounded tail_sum_scaled(const PsiSpec& s, long long n) {
  if (n < 1) throw DomainError("tail sums start at n >= 1");
  return series_scaled(s, n, 0.0, 0, log_ref(s, n));
}

Bounded weighted_tail_scaled(const PsiSpec& s, long long n) {
  if (n < 0) throw DomainError("weighted tail needs n >= 0");
  return series_scaled(s, n + 1, static_cast<double>(n), 1, log_ref(s, n));
}

double tail_sum(const PsiSpec& s, long long n, double tol) {
  const Bounded b = tail_sum_scaled(s, n);
  const double scale = std::exp(log_ref(s, n));
  if (b.err * scale > tol && b.err * scale > 8 * kEps * b.value * scale)
    throw ToleranceError("tail sum tolerance not reached");
  return b.value * scale;
}

double weighted_tail_sum(const PsiSpec& s, long long n, double tol) {
  const Bounded b = weighted_tail_scaled(s, n);
  const double scale = std::exp(log_ref(s, n));
  if (b.err * scale > tol && b.err * scale > 8 * kEps * b.value * scale)
    throw ToleranceError("weighted tail tolerance not reached");
  return b.value * scale;
}

long long truncation_index(const PsiSpec& s, long long n, double tol_scaled, double ref,
                           long long max_terms) {
  n = std::max(n, 1LL);
  if (s.is_table()) return std::max(n - 1, s.support_end());
  if (s.family == Family::Geometric) {
    // q^(K+1) / (1-q) <= tol e^ref
    const double omq = -std::expm1(-s.alpha);
    const double x = (std::log(tol_scaled * omq) + ref) / (-s.alpha) - 1.0;
    const long long K = std::max(n - 1, static_cast<long long>(std::ceil(x)));
    return K - n > max_terms ? 0 : K;
  }
  auto ok = [&](long long K) { return tail_bound(s, static_cast<double>(K + 1), 0, ref) <= tol_scaled; };
  long long lo = n - 1;
  if (ok(lo)) return lo;
  long long step = 1, hi = lo + step;
  while (!ok(hi)) {
    lo = hi;
    step *= 2;
    hi = lo + step;
    if (hi - n > max_terms) return 0;
  }
  while (hi - lo > 1) {
    const long long mid = lo + (hi - lo) / 2;
    if (ok(mid)) hi = mid;
    else lo = mid;
  }
  return hi;
}

IntegralEstimate integral_tail(const PsiSpec& s, double a, double tol) {
  if (s.is_table()) throw UnsupportedError("integral tail needs a continuous extension");
  validate(s);
  const double ref = log_derivs(s, a).l0;
  const double scale = std::exp(ref);
  const Bounded i1 = integral_scaled(s, a, 0, ref, 1e-14);
  const Bounded i2 = integral_scaled(s, a, 1, ref, 1e-14);
  IntegralEstimate e;
  e.I1 = i1.value * scale;
  e.I1_err = i1.err * scale;
  e.I2 = i2.value * scale;
  e.I2_err = i2.err * scale;
  if (e.I1_err > tol || e.I2_err > tol) {
    if (e.I1_err > 1e-12 * e.I1 || e.I2_err > 1e-12 * e.I2) throw ToleranceError("integral tail tolerance not reached");
  }
  const SmoothnessProfile prof(s);
  const double al = prof.alpha_at(a), lam = prof.lambda_at(a);
  if (al >= 1.0) {
    e.status = IntegralStatus::Precondition;
    return e;
  }
  e.lemma_checked = true;
  e.lemma_lo = lam * std::exp(ref);
  e.lemma_hi = e.lemma_lo * (1.0 + al / (1.0 - al));
  e.lemma_holds = e.I1 + e.I1_err >= e.lemma_lo && e.I1 - e.I1_err <= e.lemma_hi;
  return e;
}

DqReport dq_report(const PsiSpec& s, long long n) {
  if (n < 1) throw DomainError("n must be >= 1");
  validate(s);
  DqReport r;
  auto ratio = [&](long long k) {
    if (s.is_table()) {
      const double a = eval_psi(s, k), b = eval_psi(s, k + 1);
      if (a <= 0.0 || b <= 0.0) throw DomainError("D_q ratios need psi(k) > 0");
      return b / a;
    }
    return std::exp(log_derivs(s, static_cast<double>(k + 1)).l0 - log_derivs(s, static_cast<double>(k)).l0);
  };
  switch (s.family) {
    case Family::Geometric:
      r.q = std::exp(-s.alpha);
      break;
    case Family::GeneralizedPoisson:
      r.q = s.r > 1.0 ? 0.0 : (s.r == 1.0 ? std::exp(-s.alpha) : 1.0);
      break;
    case Family::FiniteSupport:
      throw DomainError("finitely supported psi vanishes past its support; D_q ratio undefined");
    case Family::UserTable: {
      const long long K = static_cast<long long>(s.values.size());
      if (K < 2) throw DomainError("user table too short for a ratio");
      for (double v : s.values)
        if (v <= 0.0) throw DomainError("D_q ratios need psi(k) > 0");
      r.q = ratio(K - 1);
      r.exact_sup = false;
      break;
    }
    default:
      r.q = 1.0;  // sub-exponential decay: ratio tends to 1
      break;
  }
  r.in_dq = r.q < 1.0;

  long long scan_end = n + 4096;
  if (s.family == Family::UserTable) scan_end = static_cast<long long>(s.values.size()) - 1;
  const bool monotone = s.family == Family::Geometric ||
                        (s.family == Family::GeneralizedPoisson && s.r >= 1.0);
  if (!monotone) r.exact_sup = false;
  if (monotone) scan_end = n + 1;
  r.epsilon_n = 0.0;
  for (long long k = n; k <= std::max(n, scan_end); ++k) {
    if (s.family == Family::UserTable && k + 1 > static_cast<long long>(s.values.size())) break;
    r.epsilon_n = std::max(r.epsilon_n, std::fabs(ratio(k) - r.q));
  }
  r.epsilon_star_n1 = 0.0;
  for (long long k = n + 1; k <= std::max(n + 1, scan_end + 1); ++k) {
    if (s.family == Family::UserTable && k + 1 > static_cast<long long>(s.values.size())) break;
    const double kk = static_cast<double>(k);
    r.epsilon_star_n1 = std::max(r.epsilon_star_n1, std::fabs(ratio(k) * (kk + 1.0) / kk - r.q));
  }
  if (s.family == Family::Geometric) {
    r.epsilon_n = 0.0;
    r.epsilon_star_n1 = r.q / static_cast<double>(n + 1);
  }
  if (r.in_dq) {
    r.admissible = 1.0 / static_cast<double>(n) + r.epsilon_n < 0.5 * (1.0 - r.q);
    if (!s.is_table()) {
      const Bounded t0 = tail_sum_scaled(s, n);
      r.r_n = t0.value - 1.0 / (1.0 - r.q);
      const double ref1 = log_ref(s, n + 1);
      const Bounded t1 = series_scaled(s, n + 1, 0.0, 1, ref1);
      r.r_star_n1 = t1.value / static_cast<double>(n + 1) - 1.0 / (1.0 - r.q);
    } else {
      const Bounded t0 = series_scaled(s, n, 0.0, 0, 0.0);
      r.r_n = t0.value / eval_psi(s, n) - 1.0 / (1.0 - r.q);
      const Bounded t1 = series_scaled(s, n + 1, 0.0, 1, 0.0);
      r.r_star_n1 = t1.value / ((n + 1) * eval_psi(s, n + 1)) - 1.0 / (1.0 - r.q);
    }
  } else {
    r.r_n = std::numeric_limits<double>::quiet_NaN();
    r.r_star_n1 = std::numeric_limits<double>::quiet_NaN();
  }
  return r;
}

double asymp_ratio(const PsiSpec& s, long long n) {
  if (n < 1) throw DomainError("n must be >= 1");
  const Bounded den = tail_sum_scaled(s, n);
  if (den.value <= 0.0) throw DomainError("zero tail sum in asymptotic ratio");
  const Bounded num = weighted_tail_scaled(s, n);
  return num.value / (static_cast<double>(n) * den.value);
}

void to_json(nlohmann::json& j, const PsiSpec& s) {
  j = nlohmann::json{{"family", family_name(s.family)}};
  nlohmann::json p = nlohmann::json::object();
  switch (s.family) {
    case Family::Geometric:
      p["alpha"] = s.alpha;
      p["q"] = std::exp(-s.alpha);
      break;
    case Family::GeneralizedPoisson:
      p["alpha"] = s.alpha;
      p["r"] = s.r;
      break;
    case Family::FiniteSupport:
      p["values"] = s.values;
      break;
    case Family::UserTable:
      p["values"] = s.values;
      p["interpolate"] = s.interpolate;
      break;
    default:
      break;
  }
  j["params"] = p;
}

void from_json(const nlohmann::json& j, PsiSpec& s) {
  const Family f = parse_family(j.at("family").get<std::string>());
  const nlohmann::json p = j.value("params", nlohmann::json::object());
  switch (f) {
    case Family::Geometric:
      if (p.contains("q")) s = PsiSpec::geometric_q(p.at("q").get<double>());
      else s = PsiSpec::geometric(p.value("alpha", 1.0));
      break;
    case Family::GeneralizedPoisson:
      s = PsiSpec::generalized_poisson(p.value("alpha", 1.0), p.value("r", 1.0));
      break;
    case Family::LogLogPower: s = PsiSpec::loglog_power(); break;
    case Family::ExpLogSquared: s = PsiSpec::exp_log_squared(); break;
    case Family::ExpOverLog: s = PsiSpec::exp_over_log(); break;
    case Family::FiniteSupport:
      s = PsiSpec::finite_support(p.at("values").get<std::vector<double>>());
      break;
    case Family::UserTable:
      s = PsiSpec::user_table(p.at("values").get<std::vector<double>>(), p.value("interpolate", false));
      break;
  }
  validate(s);
}

void to_json(nlohmann::json& j, const DqReport& r) {
  auto num = [](double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr); };
  j = nlohmann::json{{"q", r.q},
                     {"in_dq", r.in_dq},
                     {"epsilon_n", r.epsilon_n},
                     {"epsilon_star_n1", r.epsilon_star_n1},
                     {"exact_sup", r.exact_sup},
                     {"admissible", r.admissible},
                     {"r_n", num(r.r_n)},
                     {"r_star_n1", num(r.r_star_n1)}};
}

void to_json(nlohmann::json& j, const IntegralEstimate& e) {
  j = nlohmann::json{{"I1", e.I1},
                     {"I1_err", e.I1_err},
                     {"I2", e.I2},
                     {"I2_err", e.I2_err},
                     {"status", e.status == IntegralStatus::Ok ? "ok" : "lemma_precondition"},
                     {"lemma_checked", e.lemma_checked},
                     {"lemma_lo", e.lemma_lo},
                     {"lemma_hi", e.lemma_hi},
                     {"lemma_holds", e.lemma_holds}};
}

}  // namespace fl
