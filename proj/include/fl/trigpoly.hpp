#pragma once

#include <vector>

#include "fl/maximize.hpp"
#include "json.hpp"

namespace fl {

// a0/2 + sum_{k=1}^{deg} a_k cos kt + b_k sin kt
struct TrigPoly {
  double a0 = 0.0;
  std::vector<double> a, b;

  TrigPoly() = default;
  explicit TrigPoly(int degree) : a(degree, 0.0), b(degree, 0.0) {}

  int degree() const;  // highest index with a nonzero coefficient
  int size() const { return static_cast<int>(a.size()); }
  void resize(int degree);

  double eval(double t) const;
  double derivative(double t) const;
  // Antiderivative of the nonconstant part; the constant contributes a0 t / 2.
  double integral(double t) const;

  double coef_l1() const;     // |a0|/2 + sum |a_k| + |b_k|, bounds the sup norm
  double curvature() const;   // sum k^2 (|a_k| + |b_k|), bounds |p''|
  double max_coef() const;    // max |coefficient|

  TrigPoly& operator+=(const TrigPoly& o);
  TrigPoly& operator-=(const TrigPoly& o);
  TrigPoly& operator*=(double s);
};

TrigPoly operator+(TrigPoly x, const TrigPoly& y);
TrigPoly operator-(TrigPoly x, const TrigPoly& y);
TrigPoly operator*(double s, TrigPoly x);

// Certified sup |p| over one period.
Certified sup_abs(const TrigPoly& p, double tol, bool parallel = true);

void to_json(nlohmann::json& j, const TrigPoly& p);
void from_json(const nlohmann::json& j, TrigPoly& p);

}  // namespace fl
