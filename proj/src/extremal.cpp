#include "fl/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fl/errors.hpp"

namespace fl {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

double t0_of(const KernelSpec& ks) {
  return kPi * (1.0 - ks.beta) / (2.0 * static_cast<double>(ks.n));
}

std::size_t pos_mod(long long a, std::size_t m) {
  const long long mm = static_cast<long long>(m);
  return static_cast<std::size_t>(((a % mm) + mm) % mm);
}

// Node index of T0 on an aligned grid of size m.
std::size_t t0_node(const KernelSpec& ks, const Rational& r, std::size_t m) {
  const long long base = 4 * ks.n * r.q;
  const long long k = static_cast<long long>(m) / base;
  return pos_mod(k * (r.q - r.p), m);
}

Bounded absolute(Bounded b, double s) {
  b.value *= s;
  b.err *= s;
  return b;
}

// (1/pi) int Phi(t) Psi_{beta,n'}(x - t) dt from exact antiderivatives on each piece.
class Convolver {
 public:
  Convolver(const ExtremalConstruction& c, long long n) : k_([&] {
      KernelSpec ks = c.kspec;
      ks.n = n;
      return ks;
    }()),
      pieces_(phi_pieces(c)) {
    if (k_.mode() != KernelMode::Direct)
      throw UnsupportedError("extremal deviation needs a directly summed kernel");
    scale_ = k_.scale();
    double mass = 0.0;
    for (const Piece& p : pieces_) mass += std::fabs(p.c);
    err_ = mass / kPi * scale_ *
           (2.0 * k_.antideriv_err() + 8.0 * static_cast<double>(pieces_.size()) * kEps *
                                            std::max(1.0, k_.tail().value));
  }

  double operator()(double x) const {
    double acc = 0.0;
    for (const Piece& p : pieces_)
      acc += p.c * (k_.antiderivative(x - p.a) - k_.antiderivative(x - p.b));
    return acc / kPi * scale_;
  }

  double err() const { return err_; }
  const Kernel& kernel() const { return k_; }

 private:
  Kernel k_;
  std::vector<Piece> pieces_;
  double scale_ = 1.0;
  double err_ = 0.0;
};

GridFunction sample_convolution(const Convolver& cv, std::size_t m) {
  std::vector<double> v(m);
  const double h = 2.0 * kPi / static_cast<double>(m);
#pragma omp parallel for schedule(static)
  for (long long j = 0; j < static_cast<long long>(m); ++j) v[j] = cv(h * static_cast<double>(j));
  return GridFunction(std::move(v));
}

}  // namespace

Rational rational_beta(double beta) {
  if (!std::isfinite(beta)) throw DomainError("beta must be finite");
  for (long long q = 1; q <= 64; ++q) {
    const double bq = beta * static_cast<double>(q);
    const double p = std::nearbyint(bq);
    if (std::fabs(bq - p) <= 1e-12 * static_cast<double>(q) * std::max(1.0, std::fabs(beta)))
      return {static_cast<long long>(p), q};
  }
  throw ResolutionError("beta has no rational form p/q with q <= 64; no aligned grid exists");
}

std::size_t aligned_grid(long long n, double beta, std::size_t m_min) {
  if (n < 1) throw DomainError("n must be >= 1");
  const Rational r = rational_beta(beta);
  const std::size_t base = static_cast<std::size_t>(4 * n * r.q);
  return std::max<std::size_t>(1, (m_min + base - 1) / base) * base;
}

double epsilon_bound(const PsiSpec& spec, long long n) {
  if (n < 1) throw DomainError("n must be >= 1");
  const double s = std::exp(log_ref(spec, n));
  const double tail = tail_sum_scaled(spec, n).value * s;
  const double wt = weighted_tail_scaled(spec, n).value * s;
  if (!(wt > 0.0)) throw DegenerateConstruction("weighted tail vanishes; the extremal function is undefined");
  return kPi * wt / (static_cast<double>(n) * (1.0 + 4.0 * kPi * tail));
}

TStar locate_tstar(const KernelSpec& ks, std::size_t m, double tol) {
  KernelSpec neg = ks;
  neg.beta = -ks.beta;
  const Kernel k(neg);
  const double s = k.scale();
  const Extrema e = kernel_extrema(k, tol > 0.0 ? tol / s : 0.0, static_cast<int>(m));
  TStar out;
  const bool up = e.max.lo >= e.neg_min.lo;
  const Certified& best = up ? e.max : e.neg_min;
  out.sign = up ? 1.0 : -1.0;
  out.norm.lo = std::max(e.max.lo, e.neg_min.lo) * s;
  out.norm.hi = std::max(e.max.hi, e.neg_min.hi) * s;
  const double T0 = t0_of(ks);
  double r = std::fmod(best.arg - T0, 2.0 * kPi);
  if (r < 0.0) r += 2.0 * kPi;
  out.t_star = T0 + r;
  out.norm.arg = out.t_star;
  const double cell = kPi / static_cast<double>(ks.n);
  out.k_star = static_cast<int>(std::clamp<long long>(static_cast<long long>(std::floor(r / cell)) + 1, 1,
                                                      2 * ks.n));
  return out;
}

EllStar find_ell_star(const KernelSpec& ks, const TStar& ts, double epsilon, std::size_t m) {
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
  const Rational rb = rational_beta(ks.beta);
  if (m % static_cast<std::size_t>(4 * ks.n * rb.q) != 0)
    throw ResolutionError("grid is not aligned to the sign pattern");
  KernelSpec neg = ks;
  neg.beta = -ks.beta;
  const Kernel k(neg);
  const double s = k.scale();
  const double T0 = t0_of(ks);
  for (int attempt = 0; attempt <= 3; ++attempt, m *= 2) {
    const double h = 2.0 * kPi / static_cast<double>(m);
    const std::size_t o = t0_node(ks, rb, m);
    const long long L = static_cast<long long>(m) / (2 * ks.n);
    const long long first = (ts.k_star - 1) * L;
    const long long last = ts.k_star * L - 1;
    const double thr = (ts.norm.hi - epsilon) / s;
    const double slack = k.curvature() * h * h / 8.0 + k.eval_err();
    auto ok = [&](long long r) {
      const double t = h * static_cast<double>(pos_mod(static_cast<long long>(o) + r, m));
      return ts.sign * k.value(t) - slack > thr;
    };
    const double rs = (ts.t_star - T0) / h;
    long long lo = static_cast<long long>(std::floor(rs));
    long long hi = static_cast<long long>(std::ceil(rs));
    if (lo < first || hi > last || !ok(lo) || !ok(hi)) continue;
    while (lo - 1 >= first && ok(lo - 1)) --lo;
    while (hi + 1 <= last && ok(hi + 1)) ++hi;
    if (hi == lo) continue;
    EllStar e;
    e.m = m;
    e.r_begin = static_cast<std::size_t>(lo);
    e.r_end = static_cast<std::size_t>(hi);
    e.interval = {T0 + h * static_cast<double>(lo), T0 + h * static_cast<double>(hi)};
    return e;
  }
  throw ConstructionError("plateau interval collapses to a single node after three refinements");
}

ExtremalConstruction build_construction(const KernelSpec& ks, double e_target, double epsilon,
                                        std::size_t m, double tol) {
  if (ks.n < 1) throw DomainError("n must be >= 1");
  if (!(e_target > 0.0) || !std::isfinite(e_target)) throw DomainError("e_target must be positive");
  validate(ks.psi);
  ExtremalConstruction c;
  c.kspec = ks;
  c.beta_q = rational_beta(ks.beta);
  const double bound = epsilon_bound(ks.psi, ks.n);
  if (epsilon <= 0.0) {
    epsilon = std::min(0.5 * bound, 1.0 / (4.0 * kPi));
  } else if (epsilon >= bound || epsilon >= 1.0 / (2.0 * kPi)) {
    throw DomainError("epsilon must lie below both the tail bound and 1/(2 pi)");
  }
  const std::size_t base = static_cast<std::size_t>(4 * ks.n * c.beta_q.q);
  if (m == 0) {
    m = aligned_grid(ks.n, ks.beta, std::max<std::size_t>(4096, 64 * static_cast<std::size_t>(ks.n)));
  } else if (m % base != 0) {
    throw ResolutionError("grid is not aligned to the sign pattern");
  }
  const TStar ts = locate_tstar(ks, m, tol);
  c.t_star = ts.t_star;
  c.k_star = ts.k_star;
  c.norm = ts.norm;
  c.ell_star = find_ell_star(ks, ts, epsilon, m);
  c.epsilon = epsilon;
  c.e_target = e_target;
  const double delta = c.ell_star.interval.length();
  c.plateau_height = e_target * (1.0 - epsilon * (2.0 * kPi - delta)) / delta;
  c.off_height = e_target * epsilon;
  const double s = std::exp(log_ref(ks.psi, ks.n));
  c.tail = absolute(tail_sum_scaled(ks.psi, ks.n), s);
  c.wt = absolute(weighted_tail_scaled(ks.psi, ks.n), s);
  return c;
}

std::vector<Piece> phi_pieces(const ExtremalConstruction& c) {
  const long long n = c.kspec.n;
  const std::size_t M = c.ell_star.m;
  const double h = 2.0 * kPi / static_cast<double>(M);
  const long long L = static_cast<long long>(M) / (2 * n);
  const double T0 = t0_of(c.kspec);
  std::vector<Piece> out;
  for (long long k = 1; k <= 2 * n; ++k) {
    const double sg = (k % 2 == 0) ? 1.0 : -1.0;
    const double a = T0 + h * static_cast<double>((k - 1) * L);
    const double b = T0 + h * static_cast<double>(k * L);
    if (k != c.k_star) {
      out.push_back({a, b, sg * c.off_height});
      continue;
    }
    const double la = T0 + h * static_cast<double>(c.ell_star.r_begin);
    const double lb = T0 + h * static_cast<double>(c.ell_star.r_end);
    if (la > a) out.push_back({a, la, sg * c.off_height});
    out.push_back({la, lb, sg * c.plateau_height});
    if (b > lb) out.push_back({lb, b, sg * c.off_height});
  }
  return out;
}

double phi_l1_exact(const ExtremalConstruction& c) {
  const double delta = c.ell_star.interval.length();
  return c.plateau_height * delta + c.off_height * (2.0 * kPi - delta);
}

GridFunction build_phi(const ExtremalConstruction& c, std::size_t m) {
  const std::size_t M = c.ell_star.m;
  if (m == 0 || m % M != 0) throw ResolutionError("grid must be a multiple of the construction grid");
  const std::size_t ratio = m / M;
  const std::size_t o = t0_node(c.kspec, c.beta_q, m);
  const std::size_t L = m / static_cast<std::size_t>(2 * c.kspec.n);
  const std::size_t pb = ratio * c.ell_star.r_begin, pe = ratio * c.ell_star.r_end;
  std::vector<double> v(m);
  for (std::size_t j = 0; j < m; ++j) {
    const std::size_t r = pos_mod(static_cast<long long>(j) - static_cast<long long>(o), m);
    const std::size_t k = r / L + 1;
    const double sg = (k % 2 == 0) ? 1.0 : -1.0;
    v[j] = sg * ((r >= pb && r < pe) ? c.plateau_height : c.off_height);
  }
  return GridFunction(std::move(v));
}

GridFunction build_F(const ExtremalConstruction& c, std::size_t m) {
  return sample_convolution(Convolver(c, 1), m);
}

GridFunction deviation_F(const ExtremalConstruction& c, std::size_t m) {
  return sample_convolution(Convolver(c, c.kspec.n), m);
}

DeviationValue deviation_at(const ExtremalConstruction& c, double x) {
  const Convolver cv(c, c.kspec.n);
  return {cv(x), cv.err()};
}

Certified deviation_sup(const ExtremalConstruction& c, double tol) {
  const Convolver cv(c, c.kspec.n);
  const double upper = c.tail.value / kPi * c.e_target;
  if (tol <= 0.0) tol = 1e-9 * std::max(upper, std::numeric_limits<double>::min());
  MaxProblem mp;
  mp.a = 0.0;
  mp.b = 2.0 * kPi;
  mp.curvature = phi_l1_exact(c) / kPi * cv.kernel().curvature() * cv.kernel().scale();
  mp.eval_err = cv.err();
  mp.tol = tol;
  mp.initial_cells = static_cast<int>(std::max<long long>(64, 16 * c.kspec.n));
  mp.f = [&](double x) { return cv(x); };
  const Certified up = certified_max(mp);
  mp.f = [&](double x) { return -cv(x); };
  const Certified dn = certified_max(mp);
  Certified out;
  out.lo = std::max(up.lo, dn.lo);
  out.hi = std::max(up.hi, dn.hi);
  out.arg = up.lo >= dn.lo ? up.arg : dn.arg;
  return out;
}

SharpnessReport sharpness(const ExtremalConstruction& c, std::size_t m, double l1_tol) {
  SharpnessReport r;
  r.phi_l1 = phi_l1_exact(c);
  r.grid_m = m;
  r.best = best_l1(build_phi(c, m), c.kspec.n, l1_tol);
  r.rho0 = deviation_at(c, 0.0);
  r.rho_sup = deviation_sup(c);
  const double nd = static_cast<double>(c.kspec.n);
  r.upper_bound = c.tail.value / kPi * c.e_target;
  r.lower_bound = (c.tail.value / kPi - 2.0 / nd * c.wt.value) * c.e_target;
  const double nrm = c.norm.lo;
  r.pairing_bound = c.e_target * (nrm / kPi - c.epsilon * (4.0 * nrm + 1.0 / kPi));
  r.xi = extract_theta(r.rho_sup, c.tail, c.wt, c.kspec.n, BandForm::Sharpness, c.e_target);
  return r;
}

void to_json(nlohmann::json& j, const Interval& i) {
  j = nlohmann::json{{"lo", i.lo}, {"hi", i.hi}, {"length", i.length()}};
}

void to_json(nlohmann::json& j, const ExtremalConstruction& c) {
  j = nlohmann::json{
      {"kspec", c.kspec},
      {"beta_rational", {{"p", c.beta_q.p}, {"q", c.beta_q.q}}},
      {"t_star", c.t_star},
      {"k_star", c.k_star},
      {"norm", c.norm},
      {"ell_star", c.ell_star.interval},
      {"grid_m", c.ell_star.m},
      {"epsilon", c.epsilon},
      {"e_target", c.e_target},
      {"plateau_height", c.plateau_height},
      {"off_height", c.off_height},
      {"tail", {{"value", c.tail.value}, {"err", c.tail.err}}},
      {"weighted_tail", {{"value", c.wt.value}, {"err", c.wt.err}}},
  };
}

void to_json(nlohmann::json& j, const SharpnessReport& r) {
  j = nlohmann::json{{"phi_l1", r.phi_l1},
                     {"best_l1", r.best},
                     {"grid_m", r.grid_m},
                     {"rho_at_0", {{"value", r.rho0.value}, {"err", r.rho0.err}}},
                     {"rho_sup", r.rho_sup},
                     {"lower_bound", r.lower_bound},
                     {"upper_bound", r.upper_bound},
                     {"pairing_bound", r.pairing_bound},
                     {"xi", r.xi}};
}

}  // namespace fl
