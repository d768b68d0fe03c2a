#include "fl/maximize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include <boost/math/tools/toms748_solve.hpp>

namespace fl {

double golden_max(const std::function<double(double)>& f, double a, double b, int iters) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < iters; ++i) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return fc >= fd ? c : d;
}

namespace {

struct Cell {
  double xl, xr, fl, fr;
};

struct Best {
  double f = -std::numeric_limits<double>::infinity();
  double x = 0.0;
  void offer(double fx, double xx) {
    if (fx > f || (fx == f && xx < x)) {
      f = fx;
      x = xx;
    }
  }
};

void eval_batch(const MaxProblem& p, const std::vector<double>& xs, std::vector<double>& fs,
                bool parallel) {
  fs.resize(xs.size());
  const std::int64_t n = static_cast<std::int64_t>(xs.size());
#pragma omp parallel for schedule(dynamic, 4) if (parallel)
  for (std::int64_t i = 0; i < n; ++i) fs[i] = p.f(xs[i]);
}

Certified run(const MaxProblem& p, bool parallel) {
  const int n0 = std::max(2, p.initial_cells);
  const double w0 = (p.b - p.a) / n0;
  std::vector<double> xs(n0 + 1), fs;
  for (int i = 0; i <= n0; ++i) xs[i] = p.a + w0 * i;
  xs[n0] = p.b;
  eval_batch(p, xs, fs, parallel);

  Best best;
  for (int i = 0; i <= n0; ++i) best.offer(fs[i], xs[i]);

  if (p.polish > 0) {
    std::vector<int> peaks;
    for (int i = 0; i <= n0; ++i) {
      const double l = i > 0 ? fs[i - 1] : -std::numeric_limits<double>::infinity();
      const double r = i < n0 ? fs[i + 1] : -std::numeric_limits<double>::infinity();
      if (fs[i] >= l && fs[i] >= r) peaks.push_back(i);
    }
    std::stable_sort(peaks.begin(), peaks.end(), [&](int i, int j) { return fs[i] > fs[j]; });
    if (static_cast<int>(peaks.size()) > p.polish) peaks.resize(p.polish);
    std::vector<double> px(peaks.size()), pf(peaks.size());
    const std::int64_t np = static_cast<std::int64_t>(peaks.size());
#pragma omp parallel for schedule(static) if (parallel)
    for (std::int64_t k = 0; k < np; ++k) {
      const int i = peaks[k];
      const double lo = std::max(p.a, xs[i] - w0), hi = std::min(p.b, xs[i] + w0);
      px[k] = golden_max(p.f, lo, hi);
      pf[k] = p.f(px[k]);
    }
    for (std::int64_t k = 0; k < np; ++k) best.offer(pf[k], px[k]);
  }

  std::vector<Cell> cells(n0);
  for (int i = 0; i < n0; ++i) cells[i] = {xs[i], xs[i + 1], fs[i], fs[i + 1]};

  auto upper = [&](const Cell& c) {
    const double w = c.xr - c.xl;
    return std::max(c.fl, c.fr) + p.curvature * w * w / 8.0 + p.eval_err;
  };

  // below 4*eval_err the settle test can never succeed
  const double tol = std::max(p.tol, 4.0 * p.eval_err);
  std::vector<Cell> settled;
  const double min_w = 1e-15 * std::max(1.0, std::fabs(p.b - p.a));
  for (int level = 0; level < 80 && !cells.empty() && cells.size() < 4000000; ++level) {
    const double lo = best.f - p.eval_err;
    std::vector<Cell> active;
    for (const auto& c : cells) {
      if (upper(c) <= lo + tol || c.xr - c.xl <= min_w) settled.push_back(c);
      else active.push_back(c);
    }
    if (active.empty()) break;
    std::vector<double> mids(active.size());
    for (std::size_t i = 0; i < active.size(); ++i) mids[i] = 0.5 * (active[i].xl + active[i].xr);
    std::vector<double> fm;
    eval_batch(p, mids, fm, parallel);
    cells.clear();
    for (std::size_t i = 0; i < active.size(); ++i) {
      best.offer(fm[i], mids[i]);
      cells.push_back({active[i].xl, mids[i], active[i].fl, fm[i]});
      cells.push_back({mids[i], active[i].xr, fm[i], active[i].fr});
    }
  }
  for (const auto& c : cells) settled.push_back(c);

  Certified out;
  out.lo = best.f - p.eval_err;
  out.arg = best.x;
  out.hi = out.lo;
  for (const auto& c : settled) out.hi = std::max(out.hi, upper(c));
  out.hi = std::max(out.hi, best.f + p.eval_err);
  return out;
}

}  // namespace

Certified certified_max(const MaxProblem& p) { return run(p, true); }

Certified certified_max_serial(const MaxProblem& p) { return run(p, false); }

double bracket_root(const std::function<double(double)>& f, double a, double b, double fa,
                    double fb) {
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  std::uintmax_t iters = 200;
  auto tol = [](double x, double y) { return std::fabs(x - y) <= 4e-16 * std::max(1.0, std::fabs(x)); };
  auto r = boost::math::tools::toms748_solve(f, a, b, fa, fb, tol, iters);
  return 0.5 * (r.first + r.second);
}

}  // namespace fl
