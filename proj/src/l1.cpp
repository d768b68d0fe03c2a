#include "fl/l1.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "fl/errors.hpp"
#include "fl/maximize.hpp"

namespace fl {

namespace {

constexpr double kPi = std::numbers::pi;

struct TrigTables {
  std::vector<double> c, s;
  explicit TrigTables(std::size_t m) : c(m), s(m) {
    for (std::size_t i = 0; i < m; ++i) {
      const double t = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(m);
      c[i] = std::cos(t);
      s[i] = std::sin(t);
    }
  }
};

// Coefficients for k = 0..K; the Nyquist harmonic (2k == m) gets weight 1/m.
TrigPoly dft(const GridFunction& gf, int K, bool parallel) {
  const std::size_t m = gf.m();
  const TrigTables tab(m);
  TrigPoly p(K);
  std::vector<double> ca(K + 1), cb(K + 1);
#pragma omp parallel for schedule(static) if (parallel)
  for (int k = 0; k <= K; ++k) {
    double sa = 0.0, sb = 0.0;
    std::size_t idx = 0;
    for (std::size_t j = 0; j < m; ++j) {
      sa += gf.values[j] * tab.c[idx];
      sb += gf.values[j] * tab.s[idx];
      idx += static_cast<std::size_t>(k);
      if (idx >= m) idx -= m;
    }
    const double w = (2 * static_cast<std::size_t>(k) == m) ? 1.0 : 2.0;
    ca[k] = w * sa / static_cast<double>(m);
    cb[k] = (2 * static_cast<std::size_t>(k) == m) ? 0.0 : 2.0 * sb / static_cast<double>(m);
  }
  p.a0 = ca[0];
  for (int k = 1; k <= K; ++k) {
    p.a[k - 1] = ca[k];
    p.b[k - 1] = cb[k];
  }
  return p;
}

TrigPoly coeffs_impl(const GridFunction& gf, int upto, bool parallel) {
  check(gf);
  if (upto < 0) throw DomainError("degree must be >= 0");
  if (gf.m() < 4 * static_cast<std::size_t>(upto)) throw ResolutionError("need m >= 4 * degree");
  return dft(gf, upto, parallel);
}

TrigPoly rotate(const TrigPoly& phi, const PsiSpec& spec, double beta, double a0) {
  TrigPoly f(phi.size());
  f.a0 = a0;
  const double c = std::cos(0.5 * kPi * beta), s = std::sin(0.5 * kPi * beta);
  for (int k = 1; k <= phi.size(); ++k) {
    const double ak = phi.a[k - 1], bk = phi.b[k - 1];
    if (ak == 0.0 && bk == 0.0) continue;
    const double pk = eval_psi(spec, k);
    f.a[k - 1] = pk * (ak * c - bk * s);
    f.b[k - 1] = pk * (ak * s + bk * c);
  }
  return f;
}

}  // namespace

TrigPoly fourier_coeffs(const GridFunction& gf, int upto) { return coeffs_impl(gf, upto, true); }

TrigPoly fourier_coeffs_serial(const GridFunction& gf, int upto) { return coeffs_impl(gf, upto, false); }

GridFunction sample(const TrigPoly& p, std::size_t m) {
  std::vector<double> v(m);
  const std::int64_t mm = static_cast<std::int64_t>(m);
#pragma omp parallel for schedule(static)
  for (std::int64_t j = 0; j < mm; ++j) v[j] = p.eval(2.0 * kPi * static_cast<double>(j) / static_cast<double>(m));
  return GridFunction(std::move(v));
}

GridFunction partial_sum(const GridFunction& gf, long long n) {
  if (n < 1) throw DomainError("n must be >= 1");
  return sample(fourier_coeffs(gf, static_cast<int>(n - 1)), gf.m());
}

GridFunction deviation(const GridFunction& gf, long long n) {
  GridFunction s = partial_sum(gf, n);
  for (std::size_t j = 0; j < gf.m(); ++j) s.values[j] = gf.values[j] - s.values[j];
  return s;
}

TrigPoly deviation(const TrigPoly& f, long long n) {
  if (n < 1) throw DomainError("n must be >= 1");
  TrigPoly d = f;
  d.a0 = 0.0;
  for (int k = 1; k < std::min<long long>(n, f.size() + 1); ++k) d.a[k - 1] = d.b[k - 1] = 0.0;
  return d;
}

GridFunction psi_integrate(const GridFunction& phi, const PsiSpec& spec, double beta, double a0) {
  check(phi);
  validate(spec);
  const TrigPoly c = dft(phi, static_cast<int>(phi.m() / 2), true);
  if (std::fabs(0.5 * c.a0) >= 1e-10) throw PreconditionError("phi must have zero mean");
  return sample(rotate(c, spec, beta, a0), phi.m());
}

TrigPoly psi_integrate(const TrigPoly& phi, const PsiSpec& spec, double beta, double a0) {
  validate(spec);
  if (std::fabs(0.5 * phi.a0) >= 1e-10) throw PreconditionError("phi must have zero mean");
  return rotate(phi, spec, beta, a0);
}

double l1_norm(const GridFunction& gf) {
  check(gf);
  double s = 0.0;
  for (double v : gf.values) s += std::fabs(v);
  return s * gf.step();
}

namespace {

// Sign changes of p on [0, 2 pi), refined by TOMS 748 from a uniform scan.
std::vector<double> roots(const TrigPoly& p) {
  const int deg = std::max(1, p.size());
  const int N = std::max(512, 64 * (deg + 1));
  std::vector<double> v(N + 1);
  for (int i = 0; i <= N; ++i) v[i] = p.eval(2.0 * kPi * i / N);
  std::vector<double> dv(N + 1);
  for (int i = 0; i <= N; ++i) dv[i] = p.derivative(2.0 * kPi * i / N);
  std::vector<double> z;
  auto f = [&](double t) { return p.eval(t); };
  auto df = [&](double t) { return p.derivative(t); };
  for (int i = 0; i < N; ++i) {
    const double a = 2.0 * kPi * i / N, b = 2.0 * kPi * (i + 1) / N;
    if (v[i] == 0.0) {
      const double prev = v[(i + N - 1) % N];
      if (prev != 0.0 && prev * v[i + 1] < 0.0) z.push_back(a);
      continue;
    }
    if (v[i] * v[i + 1] < 0.0) {
      z.push_back(bracket_root(f, a, b, v[i], v[i + 1]));
    } else if (v[i + 1] != 0.0 && dv[i] * dv[i + 1] < 0.0) {
      // a close pair of roots hides between nodes with equal signs
      const double e = bracket_root(df, a, b, dv[i], dv[i + 1]);
      const double ve = p.eval(e);
      if (ve * v[i] < 0.0) {
        z.push_back(bracket_root(f, a, e, v[i], ve));
        z.push_back(bracket_root(f, e, b, ve, v[i + 1]));
      }
    }
  }
  return z;
}

struct ArcSum {
  double l1 = 0.0;            // int |r|
  std::vector<double> sgn;    // sign on arc i = [z_i, z_{i+1}]
  std::vector<double> za, zb;
};

ArcSum arcs(const TrigPoly& r, const std::vector<double>& z) {
  ArcSum out;
  if (z.empty()) {
    out.za = {0.0};
    out.zb = {2.0 * kPi};
  } else {
    for (std::size_t i = 0; i < z.size(); ++i) {
      out.za.push_back(z[i]);
      out.zb.push_back(i + 1 < z.size() ? z[i + 1] : z[0] + 2.0 * kPi);
    }
  }
  for (std::size_t i = 0; i < out.za.size(); ++i) {
    const double I = r.integral(out.zb[i]) - r.integral(out.za[i]);
    const double s = r.eval(0.5 * (out.za[i] + out.zb[i])) >= 0.0 ? 1.0 : -1.0;
    out.sgn.push_back(s);
    out.l1 += s * I;
  }
  return out;
}

TrigPoly from_coeffs(const Eigen::VectorXd& c, int n) {
  TrigPoly p(n - 1);
  p.a0 = 2.0 * c[0];
  for (int k = 1; k < n; ++k) {
    p.a[k - 1] = c[2 * k - 1];
    p.b[k - 1] = c[2 * k];
  }
  return p;
}

Eigen::VectorXd to_coeffs(const TrigPoly& p, int n) {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(2 * n - 1);
  c[0] = 0.5 * p.a0;
  for (int k = 1; k < n && k <= p.size(); ++k) {
    c[2 * k - 1] = p.a[k - 1];
    c[2 * k] = p.b[k - 1];
  }
  return c;
}

void basis_at(double t, int n, Eigen::VectorXd& phi) {
  phi[0] = 1.0;
  for (int k = 1; k < n; ++k) {
    phi[2 * k - 1] = std::cos(k * t);
    phi[2 * k] = std::sin(k * t);
  }
}

void antideriv_at(double t, int n, Eigen::VectorXd& Phi) {
  Phi[0] = t;
  for (int k = 1; k < n; ++k) {
    Phi[2 * k - 1] = std::sin(k * t) / k;
    Phi[2 * k] = -std::cos(k * t) / k;
  }
}

struct ContinuumState {
  double value = 0.0;
  Eigen::VectorXd grad;  // d/dc int |f - p| = -int sign(r) phi_i
  std::vector<double> z;
  TrigPoly r;
};

ContinuumState continuum_state(const TrigPoly& f, const Eigen::VectorXd& c, int n) {
  ContinuumState st;
  st.r = f - from_coeffs(c, n);
  st.z = roots(st.r);
  const ArcSum a = arcs(st.r, st.z);
  st.value = a.l1;
  const int R = 2 * n - 1;
  st.grad = Eigen::VectorXd::Zero(R);
  Eigen::VectorXd Pa(R), Pb(R);
  for (std::size_t i = 0; i < a.za.size(); ++i) {
    antideriv_at(a.za[i], n, Pa);
    antideriv_at(a.zb[i], n, Pb);
    st.grad -= a.sgn[i] * (Pb - Pa);
  }
  return st;
}

// Dual bound from the projection q of sign(r) onto degree <= n-1:
// y = (sign r - q) / (1 + sum |q|) is feasible, giving int f y = (P - int r q)/(1 + |q|_1).
double continuum_lower_bound(const ContinuumState& st, int n) {
  const int R = 2 * n - 1;
  Eigen::VectorXd q(R);
  q[0] = -st.grad[0] / (2.0 * kPi);
  for (int i = 1; i < R; ++i) q[i] = -st.grad[i] / kPi;
  const double Q = q.cwiseAbs().sum();
  double rq = 2.0 * kPi * 0.5 * st.r.a0 * q[0];
  for (int k = 1; k < n && k <= st.r.size(); ++k)
    rq += kPi * (st.r.a[k - 1] * q[2 * k - 1] + st.r.b[k - 1] * q[2 * k]);
  return (st.value - rq) / (1.0 + Q);
}

L1ApproxResult newton_polish(const TrigPoly& f, int n, const TrigPoly& start, int* iters_out) {
  const int R = 2 * n - 1;
  Eigen::VectorXd c = to_coeffs(start, n);
  ContinuumState st = continuum_state(f, c, n);
  int it = 0;
  Eigen::VectorXd phi(R);
  for (; it < 60; ++it) {
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(R, R);
    for (double zz : st.z) {
      basis_at(zz, n, phi);
      const double d = std::fabs(st.r.derivative(zz));
      if (d <= 0.0) continue;
      H.noalias() += (2.0 / d) * phi * phi.transpose();
    }
    H.diagonal().array() += 1e-14 * std::max(1.0, H.trace());
    const Eigen::VectorXd delta = H.ldlt().solve(-st.grad);
    if (!delta.allFinite()) break;
    double step = 1.0;
    bool improved = false;
    for (int ls = 0; ls < 40; ++ls) {
      ContinuumState trial = continuum_state(f, c + step * delta, n);
      const double flat = 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, st.value);
      if (trial.value < st.value ||
          (trial.value <= st.value + flat && trial.grad.norm() < 0.5 * st.grad.norm())) {
        c += step * delta;
        st = std::move(trial);
        improved = true;
        break;
      }
      step *= 0.5;
    }
    if (!improved) break;
    if (st.grad.norm() <= 1e-15 * std::max(1.0, st.value)) {
      ++it;
      break;
    }
  }
  L1ApproxResult out;
  out.poly = from_coeffs(c, n);
  out.value = st.value;
  out.gap = std::max(0.0, st.value - continuum_lower_bound(st, n));
  out.method = "newton";
  *iters_out = it;
  return out;
}

// ---- discrete problem -------------------------------------------------------------

struct Discrete {
  int n, R;
  std::size_t m;
  double h;
  Eigen::MatrixXd A;  // m x R basis samples
  Eigen::VectorXd f;
  Eigen::VectorXd norms;  // sum_j A_ji^2
};

Discrete setup(const GridFunction& gf, int n) {
  Discrete d;
  d.n = n;
  d.R = 2 * n - 1;
  d.m = gf.m();
  d.h = gf.step();
  const TrigTables tab(d.m);
  d.A.resize(static_cast<Eigen::Index>(d.m), d.R);
  d.f.resize(static_cast<Eigen::Index>(d.m));
  for (std::size_t j = 0; j < d.m; ++j) {
    d.f[j] = gf.values[j];
    d.A(j, 0) = 1.0;
    for (int k = 1; k < n; ++k) {
      const std::size_t idx = (j * static_cast<std::size_t>(k)) % d.m;
      d.A(j, 2 * k - 1) = tab.c[idx];
      d.A(j, 2 * k) = tab.s[idx];
    }
  }
  d.norms = d.A.colwise().squaredNorm().transpose();
  return d;
}

// Discrete analogue of continuum_lower_bound for a sign-like vector y.
double discrete_lower_bound(const Discrete& d, const Eigen::VectorXd& y) {
  const Eigen::VectorXd q = (d.A.transpose() * y).cwiseQuotient(d.norms);
  const Eigen::VectorXd yp = (y - d.A * q) / (1.0 + q.cwiseAbs().sum());
  return d.h * d.f.dot(yp);
}

Eigen::VectorXd sign_vec(const Eigen::VectorXd& r) {
  Eigen::VectorXd s(r.size());
  for (Eigen::Index j = 0; j < r.size(); ++j) s[j] = r[j] >= 0.0 ? 1.0 : -1.0;
  return s;
}

// Primal vertex simplex for min sum |f_j - (A c)_j| in the spirit of Barrodale and
// Roberts. A vertex interpolates f at R basis points. Leaving point: largest dual
// violation |y_i| > 1 (Dantzig), smallest index on ties, and smallest index after a
// degenerate step (Bland). Entering point: long step over the residual breakpoints
// along the edge until the directional slope turns nonnegative.
L1ApproxResult simplex(const Discrete& d, double tol) {
  const int R = d.R;
  const Eigen::Index m = static_cast<Eigen::Index>(d.m);
  const double scale = std::max(d.f.cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());
  const double thr = 1e-13 * scale;
  std::vector<Eigen::Index> B(R);
  std::vector<char> inB(d.m, 0);
  for (int i = 0; i < R; ++i) {
    B[i] = static_cast<Eigen::Index>((static_cast<std::size_t>(i) * d.m) / R);
    inB[B[i]] = 1;
  }
  Eigen::MatrixXd AB(R, R);
  Eigen::VectorXd fB(R), c(R), r(m), s(m), rhs(R), y(R), e(R), dir(R), g(m);
  bool degenerate = false;
  const int max_iter = 200 * R + 2000;
  int it = 0;
  // Stalled degenerate vertices can cycle; the data then gets a deterministic
  // perturbation at 1e-12 of its scale, which breaks ties generically.
  Eigen::VectorXd fp = d.f;
  double best_obj = std::numeric_limits<double>::infinity();
  int stall = 0, perturbations = 0;
  L1ApproxResult out;
  for (; it < max_iter; ++it) {
    for (int i = 0; i < R; ++i) {
      AB.row(i) = d.A.row(B[i]);
      fB[i] = fp[B[i]];
    }
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(AB);
    c = lu.solve(fB);
    r = fp - d.A * c;
    const double obj = r.cwiseAbs().sum();
    if (obj < best_obj - 1e-14 * scale * static_cast<double>(m)) {
      best_obj = obj;
      stall = 0;
    } else if (++stall > R + 4) {
      ++perturbations;
      std::uint64_t z = 0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(perturbations);
      for (Eigen::Index j = 0; j < m; ++j) {
        z += 0x9E3779B97F4A7C15ull;
        std::uint64_t x = z;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
        x ^= x >> 31;
        fp[j] += 1e-12 * scale * (static_cast<double>(x >> 11) * 0x1.0p-53 * 2.0 - 1.0);
      }
      best_obj = std::numeric_limits<double>::infinity();
      stall = 0;
      continue;
    }
    for (Eigen::Index j = 0; j < m; ++j) s[j] = inB[j] ? 0.0 : (r[j] >= -thr ? 1.0 : -1.0);
    rhs = -(d.A.transpose() * s);
    y = lu.transpose().solve(rhs);

    int leave = -1;
    double worst = 1.0 + 1e-10;
    for (int i = 0; i < R; ++i) {
      const double v = std::fabs(y[i]);
      if (v <= 1.0 + 1e-10) continue;
      if (degenerate) {
        if (leave < 0 || B[i] < B[leave]) leave = i;
      } else if (v > worst || (v == worst && leave >= 0 && B[i] < B[leave])) {
        worst = v;
        leave = i;
      }
    }
    if (leave < 0) break;

    const double sigma = y[leave] < 0.0 ? 1.0 : -1.0;
    e.setZero();
    e[leave] = 1.0;
    dir = lu.solve(e);
    g = d.A * dir;
    std::vector<std::pair<double, Eigen::Index>> bp;
    for (Eigen::Index j = 0; j < m; ++j) {
      if (inB[j]) continue;
      const double sg = sigma * g[j];
      if (s[j] * sg <= 0.0 || std::fabs(sg) < 1e-300) continue;
      bp.emplace_back(std::max(0.0, r[j] / sg), j);
    }
    std::sort(bp.begin(), bp.end());
    double slope = -(std::fabs(y[leave]) - 1.0);
    Eigen::Index enter = -1;
    double tau = 0.0;
    for (const auto& [t, j] : bp) {
      slope += 2.0 * std::fabs(g[j]);
      if (slope >= 0.0) {
        enter = j;
        tau = t;
        break;
      }
    }
    if (enter < 0) throw InternalError("L1 simplex found an unbounded edge");
    inB[B[leave]] = 0;
    B[leave] = enter;
    inB[enter] = 1;
    degenerate = tau <= 1e-15 * scale;
  }
  if (it >= max_iter) throw ToleranceError("L1 simplex did not converge");

  r = d.f - d.A * c;
  out.poly = from_coeffs(c, d.n);
  out.value = d.h * r.cwiseAbs().sum();
  Eigen::VectorXd yfull = s;
  for (int i = 0; i < R; ++i) yfull[B[i]] = y[i];
  const double ymax = std::max(1.0, yfull.cwiseAbs().maxCoeff());
  yfull /= ymax;
  out.gap = std::max(0.0, out.value - discrete_lower_bound(d, yfull));
  out.iterations = it;
  out.grid_m = d.m;
  out.method = "simplex";
  if (out.gap > tol) throw ToleranceError("L1 simplex duality gap above tolerance");
  return out;
}

// p = 0 is optimal when sign(f) is orthogonal to the approximation space.
bool zero_is_optimal(const Discrete& d, double tol, L1ApproxResult* out) {
  // samples at rounding level get y = 0, keeping the sign pattern's symmetry
  Eigen::VectorXd y = sign_vec(d.f);
  const double thr = 1e-13 * d.f.cwiseAbs().maxCoeff();
  for (Eigen::Index j = 0; j < y.size(); ++j)
    if (std::fabs(d.f[j]) <= thr) y[j] = 0.0;
  const double P = d.h * d.f.cwiseAbs().sum();
  const double D = discrete_lower_bound(d, y);
  if (P - D > tol) return false;
  out->poly = TrigPoly(d.n - 1);
  out->value = P;
  out->gap = std::max(0.0, P - D);
  out->grid_m = d.m;
  out->method = "zero";
  return true;
}

// Degree of gf if it is a trigonometric polynomial well below the Nyquist limit.
bool detect_bandlimited(const GridFunction& gf, int max_degree, TrigPoly* out) {
  const std::size_t m = gf.m();
  double scale = 0.0;
  for (double v : gf.values) scale = std::max(scale, std::fabs(v));
  if (scale == 0.0) return false;
  const TrigTables tab(m);
  const double neg = 1e-13 * scale;
  TrigPoly p(0);
  int run = 0, last = 0;
  const int kmax = std::min<int>(max_degree, static_cast<int>(m / 4));
  for (int k = 0; k <= kmax; ++k) {
    double sa = 0.0, sb = 0.0;
    std::size_t idx = 0;
    for (std::size_t j = 0; j < m; ++j) {
      sa += gf.values[j] * tab.c[idx];
      sb += gf.values[j] * tab.s[idx];
      idx = (idx + static_cast<std::size_t>(k)) % m;
    }
    sa *= 2.0 / static_cast<double>(m);
    sb *= 2.0 / static_cast<double>(m);
    if (k == 0) {
      p.a0 = sa;
    } else {
      p.a.push_back(sa);
      p.b.push_back(sb);
    }
    if (std::fabs(sa) > neg || std::fabs(sb) > neg) {
      last = k;
      run = 0;
    } else if (++run >= 16) {
      p.resize(last);
      for (std::size_t j = 0; j < m; ++j)
        if (std::fabs(p.eval(gf.t(j)) - gf.values[j]) > 1e-11 * scale) return false;
      *out = p;
      return true;
    }
  }
  return false;
}

L1ApproxResult polish_from_grid(const TrigPoly& f, const GridFunction& gf, long long n, double tol) {
  const Discrete d = setup(gf, static_cast<int>(n));
  L1ApproxResult start;
  // Newton only needs a start: zero when it is nearly optimal on the grid
  const double loose = std::max(tol, 1e-6 * d.h * d.f.cwiseAbs().sum());
  if (!zero_is_optimal(d, loose, &start)) start = simplex(d, std::numeric_limits<double>::infinity());
  int iters = 0;
  L1ApproxResult out = newton_polish(f, static_cast<int>(n), start.poly, &iters);
  out.iterations = start.iterations + iters;
  out.grid_m = gf.m();
  return out;
}

}  // namespace

double l1_norm(const TrigPoly& p) { return arcs(p, roots(p)).l1; }

L1ApproxResult best_l1_discrete(const GridFunction& gf, long long n, double tol) {
  check(gf);
  if (n < 1) throw DomainError("n must be >= 1");
  if (gf.m() < 8 * static_cast<std::size_t>(n)) throw ResolutionError("best_l1 needs m >= 8n");
  const Discrete d = setup(gf, static_cast<int>(n));
  L1ApproxResult out;
  if (zero_is_optimal(d, tol, &out)) return out;
  return simplex(d, tol);
}

L1ApproxResult best_l1(const GridFunction& gf, long long n, double tol) {
  check(gf);
  if (n < 1) throw DomainError("n must be >= 1");
  if (gf.m() < 8 * static_cast<std::size_t>(n)) throw ResolutionError("best_l1 needs m >= 8n");
  const Discrete d = setup(gf, static_cast<int>(n));
  L1ApproxResult out;
  if (zero_is_optimal(d, tol, &out)) return out;
  TrigPoly f;
  if (detect_bandlimited(gf, static_cast<int>(4 * n + 256), &f)) {
    if (f.degree() < n) {
      out.poly = f;
      out.poly.resize(static_cast<int>(n - 1));
      out.value = 0.0;
      out.gap = 0.0;
      out.grid_m = gf.m();
      out.method = "exact";
      return out;
    }
    out = polish_from_grid(f, gf, n, tol);
    if (out.gap > tol) throw ToleranceError("continuum duality gap above tolerance");
    return out;
  }
  return simplex(d, tol);
}

L1ApproxResult best_l1(const TrigPoly& f, long long n, double tol, std::size_t m) {
  if (n < 1) throw DomainError("n must be >= 1");
  if (f.degree() < n) {
    L1ApproxResult out;
    out.poly = f;
    out.poly.resize(static_cast<int>(n - 1));
    out.method = "exact";
    return out;
  }
  if (m == 0) m = std::max<std::size_t>({4096, 64 * static_cast<std::size_t>(n), 16 * static_cast<std::size_t>(f.size())});
  if (m < 8 * static_cast<std::size_t>(n)) throw ResolutionError("best_l1 needs m >= 8n");
  const L1ApproxResult a = polish_from_grid(f, sample(f, m), n, tol);
  const L1ApproxResult b = polish_from_grid(f, sample(f, 2 * m), n, tol);
  if (std::fabs(a.value - b.value) > tol)
    throw ToleranceError("best L1 value changed under grid refinement");
  const L1ApproxResult& best = a.value <= b.value ? a : b;
  if (best.gap > tol) throw ToleranceError("continuum duality gap above tolerance");
  return best;
}

void to_json(nlohmann::json& j, const L1ApproxResult& r) {
  j = nlohmann::json{{"poly", r.poly},         {"value", r.value},   {"gap", r.gap},
                     {"grid_m", r.grid_m},     {"iterations", r.iterations},
                     {"method", r.method}};
}

}  // namespace fl
