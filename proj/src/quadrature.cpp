#include "fl/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

namespace fl {
namespace {

// QUADPACK qk21 abscissae and weights.
constexpr double xgk[11] = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
constexpr double wgk[11] = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525329917, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr double wg[5] = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Panel {
  double a, b, val, err;
  bool operator<(const Panel& o) const { return err < o.err; }
};

Panel rule(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const double fc = f(c);
  double resk = wgk[10] * fc, resg = 0.0;
  for (int j = 0; j < 10; ++j) {
    const double x = h * xgk[j];
    const double f1 = f(c - x), f2 = f(c + x);
    resk += wgk[j] * (f1 + f2);
    if (j % 2 == 1) resg += wg[j / 2] * (f1 + f2);
  }
  return {a, b, resk * h, std::fabs((resk - resg) * h)};
}

struct PanelC {
  double a, b, re, im, err;
  bool operator<(const PanelC& o) const { return err < o.err; }
};

PanelC rule_c(const std::function<void(double, double&, double&)>& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double fr, fi;
  f(c, fr, fi);
  double kr = wgk[10] * fr, ki = wgk[10] * fi, gr = 0.0, gi = 0.0;
  for (int j = 0; j < 10; ++j) {
    const double x = h * xgk[j];
    double r1, i1, r2, i2;
    f(c - x, r1, i1);
    f(c + x, r2, i2);
    kr += wgk[j] * (r1 + r2);
    ki += wgk[j] * (i1 + i2);
    if (j % 2 == 1) {
      gr += wg[j / 2] * (r1 + r2);
      gi += wg[j / 2] * (i1 + i2);
    }
  }
  return {a, b, kr * h, ki * h, std::hypot(kr - gr, ki - gi) * std::fabs(h)};
}

}  // namespace

QuadResult integrate_gk21(const std::function<double(double)>& f, double a, double b,
                          double abs_tol, double rel_tol, int max_panels) {
  QuadResult out;
  if (a == b) return out;
  std::priority_queue<Panel> heap;
  Panel p0 = rule(f, a, b);
  heap.push(p0);
  double val = p0.val, err = p0.err;
  int panels = 1;
  while (err > std::max(abs_tol, rel_tol * std::fabs(val)) && panels < max_panels) {
    Panel top = heap.top();
    heap.pop();
    const double mid = 0.5 * (top.a + top.b);
    if (mid <= top.a || mid >= top.b) {
      heap.push(top);
      break;
    }
    Panel l = rule(f, top.a, mid), r = rule(f, mid, top.b);
    val += l.val + r.val - top.val;
    err += l.err + r.err - top.err;
    heap.push(l);
    heap.push(r);
    ++panels;
  }
  // resum to limit drift from incremental updates
  val = 0.0;
  err = 0.0;
  std::vector<Panel> all;
  all.reserve(heap.size());
  while (!heap.empty()) {
    all.push_back(heap.top());
    heap.pop();
  }
  std::sort(all.begin(), all.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  for (const auto& p : all) {
    val += p.val;
    err += p.err;
  }
  out.value = val;
  out.err = err;
  out.evals = 21 * (2 * panels - 1);
  return out;
}

QuadResultC integrate_gk21_complex(const std::function<void(double, double&, double&)>& f,
                                   double a, double b, double abs_tol, int max_panels) {
  QuadResultC out;
  if (a == b) return out;
  std::priority_queue<PanelC> heap;
  PanelC p0 = rule_c(f, a, b);
  heap.push(p0);
  double err = p0.err;
  int panels = 1;
  while (err > abs_tol && panels < max_panels) {
    PanelC top = heap.top();
    heap.pop();
    const double mid = 0.5 * (top.a + top.b);
    if (mid <= top.a || mid >= top.b) {
      heap.push(top);
      break;
    }
    PanelC l = rule_c(f, top.a, mid), r = rule_c(f, mid, top.b);
    err += l.err + r.err - top.err;
    heap.push(l);
    heap.push(r);
    ++panels;
  }
  std::vector<PanelC> all;
  while (!heap.empty()) {
    all.push_back(heap.top());
    heap.pop();
  }
  std::sort(all.begin(), all.end(), [](const PanelC& x, const PanelC& y) { return x.a < y.a; });
  for (const auto& p : all) {
    out.re += p.re;
    out.im += p.im;
    out.err += p.err;
  }
  return out;
}

}  // namespace fl
