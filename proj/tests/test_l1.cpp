#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "fl/errors.hpp"
#include "fl/l1.hpp"

using namespace fl;

namespace {

constexpr double kPi = std::numbers::pi;

TrigPoly random_poly(std::mt19937_64& rng, int deg) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  TrigPoly p(deg);
  for (int k = 0; k < deg; ++k) p.a[k] = u(rng), p.b[k] = u(rng);
  return p;
}

}  // namespace

TEST_CASE("Fourier coefficients of a known polynomial") {
  TrigPoly p(3);
  p.a0 = 1.0;
  p.a = {0.5, 0.0, -2.0};
  p.b = {0.0, 0.25, 1.0};
  const TrigPoly q = fourier_coeffs(sample(p, 64), 5);
  CHECK(q.a0 == doctest::Approx(1.0));
  for (int k = 0; k < 3; ++k) {
    CHECK(q.a[k] == doctest::Approx(p.a[k]).scale(1.0).epsilon(1e-14));
    CHECK(q.b[k] == doctest::Approx(p.b[k]).scale(1.0).epsilon(1e-14));
  }
  CHECK(std::fabs(q.a[4]) < 1e-14);
}

TEST_CASE("parallel Fourier coefficients equal the serial reference") {
  std::mt19937_64 rng(4);
  const GridFunction g = sample(random_poly(rng, 40), 1024);
  const TrigPoly a = fourier_coeffs(g, 64), b = fourier_coeffs_serial(g, 64);
  CHECK(a.a == b.a);
  CHECK(a.b == b.b);
}

TEST_CASE("exact L1 norm of cos(kt) is 4") {
  for (int k : {1, 3, 8}) {
    TrigPoly p(k);
    p.a[k - 1] = 1.0;
    CHECK(l1_norm(p) == doctest::Approx(4.0).epsilon(1e-13));
  }
}

TEST_CASE("best L1 approximation of cos(nt) plus low harmonics is 4") {
  std::mt19937_64 rng(9);
  for (long long n : {1LL, 2LL, 5LL}) {
    TrigPoly f = random_poly(rng, static_cast<int>(n - 1));
    f.resize(static_cast<int>(n));
    f.a[n - 1] = 1.0;
    const L1ApproxResult r = best_l1(f, n, 1e-9);
    CAPTURE(n);
    CHECK(r.value == doctest::Approx(4.0).epsilon(1e-9));
    CHECK(r.gap <= 1e-9);
  }
}

TEST_CASE("best L1 approximation of a polynomial of degree < n is 0") {
  std::mt19937_64 rng(10);
  const TrigPoly f = random_poly(rng, 3);
  const L1ApproxResult r = best_l1(f, 4, 1e-9);
  CHECK(r.value <= 1e-9);
}

TEST_CASE("best value is below the error of any random competitor") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 5; ++trial) {
    const long long n = 3;
    TrigPoly f = random_poly(rng, 8);
    const L1ApproxResult r = best_l1(f, n, 1e-9);
    CHECK(r.value <= l1_norm(f - r.poly) + 1e-9);
    for (int c = 0; c < 20; ++c) {
      TrigPoly p = r.poly + 0.05 * random_poly(rng, static_cast<int>(n - 1));
      CHECK(r.value <= l1_norm(f - p) + 1e-9);
    }
    CHECK(r.value <= l1_norm(f) + 1e-12);
  }
}

TEST_CASE("psi integral multiplies harmonics and shifts their phase") {
  TrigPoly phi(2);
  phi.a = {1.0, 0.0};
  phi.b = {0.0, 1.0};
  const PsiSpec s = PsiSpec::geometric_q(0.5);
  const TrigPoly f = psi_integrate(phi, s, 1.0);
  // beta = 1 turns cos kt into psi(k) sin kt and sin kt into -psi(k) cos kt
  CHECK(f.b[0] == doctest::Approx(0.5).scale(1.0).epsilon(1e-15));
  CHECK(f.a[1] == doctest::Approx(-0.25).scale(1.0).epsilon(1e-15));
  CHECK(std::fabs(f.a[0]) < 1e-15);
  CHECK(std::fabs(f.b[1]) < 1e-15);
  const GridFunction g = psi_integrate(sample(phi, 64), s, 1.0);
  const GridFunction h = sample(f, 64);
  for (std::size_t j = 0; j < 64; ++j) CHECK(g.values[j] == doctest::Approx(h.values[j]).scale(1.0).epsilon(1e-13));
}

TEST_CASE("psi integral needs zero mean") {
  TrigPoly phi(1);
  phi.a0 = 1.0;
  CHECK_THROWS_AS(psi_integrate(phi, PsiSpec::geometric(1.0), 0.0), PreconditionError);
}

TEST_CASE("deviation of a polynomial keeps harmonics >= n") {
  std::mt19937_64 rng(2);
  const TrigPoly f = random_poly(rng, 6);
  const TrigPoly d = deviation(f, 3);
  for (int k = 0; k < 2; ++k) CHECK(d.a[k] == 0.0);
  for (int k = 2; k < 6; ++k) CHECK(d.a[k] == f.a[k]);
  const GridFunction dg = deviation(sample(f, 128), 3), ds = sample(d, 128);
  for (std::size_t j = 0; j < 128; ++j) CHECK(dg.values[j] == doctest::Approx(ds.values[j]).scale(1.0).epsilon(1e-13));
}

TEST_CASE("grid best L1 needs m >= 8n") {
  GridFunction g(std::vector<double>(16, 1.0));
  CHECK_THROWS_AS(best_l1(g, 4, 1e-9), ResolutionError);
}

TEST_CASE("discrete problem on a square wave") {
  // sign(cos t): the best constant approximation in L1 is 0 (median), error 2 pi
  std::vector<double> v(1024);
  for (std::size_t j = 0; j < v.size(); ++j) {
    const double t = 2.0 * kPi * static_cast<double>(j) / 1024.0 + kPi / 1024.0;
    v[j] = std::cos(t) >= 0.0 ? 1.0 : -1.0;
  }
  const L1ApproxResult r = best_l1_discrete(GridFunction(v), 1, 1e-12);
  CHECK(r.value == doctest::Approx(2.0 * kPi).epsilon(1e-12));
}
