#include "fl/trigpoly.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "fl/errors.hpp"

namespace fl {

int TrigPoly::degree() const {
  for (int k = size(); k > 0; --k)
    if (a[k - 1] != 0.0 || b[k - 1] != 0.0) return k;
  return 0;
}

void TrigPoly::resize(int degree) {
  a.resize(degree, 0.0);
  b.resize(degree, 0.0);
}

double TrigPoly::eval(double t) const {
  const std::complex<double> z(std::cos(t), std::sin(t));
  std::complex<double> acc(0.0, 0.0);
  for (int k = size(); k > 0; --k) acc = (acc + std::complex<double>(a[k - 1], -b[k - 1])) * z;
  return 0.5 * a0 + acc.real();
}

double TrigPoly::derivative(double t) const {
  const std::complex<double> z(std::cos(t), std::sin(t));
  std::complex<double> acc(0.0, 0.0);
  for (int k = size(); k > 0; --k) acc = (acc + double(k) * std::complex<double>(b[k - 1], a[k - 1])) * z;
  return acc.real();
}

double TrigPoly::integral(double t) const {
  const std::complex<double> z(std::cos(t), std::sin(t));
  std::complex<double> acc(0.0, 0.0);
  for (int k = size(); k > 0; --k) acc = (acc + std::complex<double>(-b[k - 1], -a[k - 1]) / double(k)) * z;
  return 0.5 * a0 * t + acc.real();
}

double TrigPoly::coef_l1() const {
  double s = 0.5 * std::fabs(a0);
  for (int k = 0; k < size(); ++k) s += std::fabs(a[k]) + std::fabs(b[k]);
  return s;
}

double TrigPoly::curvature() const {
  double s = 0.0;
  for (int k = 0; k < size(); ++k) s += double(k + 1) * double(k + 1) * (std::fabs(a[k]) + std::fabs(b[k]));
  return s;
}

double TrigPoly::max_coef() const {
  double s = std::fabs(a0);
  for (int k = 0; k < size(); ++k) s = std::max({s, std::fabs(a[k]), std::fabs(b[k])});
  return s;
}

TrigPoly& TrigPoly::operator+=(const TrigPoly& o) {
  if (o.size() > size()) resize(o.size());
  a0 += o.a0;
  for (int k = 0; k < o.size(); ++k) {
    a[k] += o.a[k];
    b[k] += o.b[k];
  }
  return *this;
}

TrigPoly& TrigPoly::operator-=(const TrigPoly& o) {
  if (o.size() > size()) resize(o.size());
  a0 -= o.a0;
  for (int k = 0; k < o.size(); ++k) {
    a[k] -= o.a[k];
    b[k] -= o.b[k];
  }
  return *this;
}

TrigPoly& TrigPoly::operator*=(double s) {
  a0 *= s;
  for (auto& x : a) x *= s;
  for (auto& x : b) x *= s;
  return *this;
}

TrigPoly operator+(TrigPoly x, const TrigPoly& y) { return x += y; }
TrigPoly operator-(TrigPoly x, const TrigPoly& y) { return x -= y; }
TrigPoly operator*(double s, TrigPoly x) { return x *= s; }

Certified sup_abs(const TrigPoly& p, double tol, bool parallel) {
  const double scale = p.coef_l1();
  if (scale == 0.0) return {};
  const double err = 8.0 * (p.size() + 2) * std::numeric_limits<double>::epsilon() * scale;
  MaxProblem mp;
  mp.a = 0.0;
  mp.b = 2.0 * std::numbers::pi;
  mp.curvature = p.curvature();
  mp.eval_err = err;
  mp.tol = tol;
  mp.initial_cells = std::max(64, 8 * p.size());
  mp.f = [&](double t) { return p.eval(t); };
  const Certified up = parallel ? certified_max(mp) : certified_max_serial(mp);
  mp.f = [&](double t) { return -p.eval(t); };
  const Certified dn = parallel ? certified_max(mp) : certified_max_serial(mp);
  Certified out;
  out.lo = std::max(up.lo, dn.lo);
  out.hi = std::max(up.hi, dn.hi);
  out.arg = up.lo >= dn.lo ? up.arg : dn.arg;
  return out;
}

void to_json(nlohmann::json& j, const TrigPoly& p) {
  j = nlohmann::json{{"a0", p.a0}, {"a", p.a}, {"b", p.b}};
}

void from_json(const nlohmann::json& j, TrigPoly& p) {
  p.a0 = j.value("a0", 0.0);
  p.a = j.value("a", std::vector<double>{});
  p.b = j.value("b", std::vector<double>{});
  if (p.a.size() != p.b.size()) throw DomainError("TrigPoly needs equally long a and b arrays");
}

}  // namespace fl
