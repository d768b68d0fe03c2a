#include "doctest.h"

#include <cmath>
#include <numbers>

#include "fl/errors.hpp"
#include "fl/extremal.hpp"

using namespace fl;

namespace {

constexpr double kPi = std::numbers::pi;

ExtremalConstruction geo(double beta, long long n) {
  return build_construction(KernelSpec{PsiSpec::geometric_q(0.5), beta, n});
}

}  // namespace

TEST_CASE("rational beta detection") {
  CHECK(rational_beta(0.5).p == 1);
  CHECK(rational_beta(0.5).q == 2);
  CHECK(rational_beta(1.0).q == 1);
  CHECK(rational_beta(2.0 / 3.0).q == 3);
  CHECK_THROWS_AS(rational_beta(std::sqrt(2.0) / 2.0), ResolutionError);
}

TEST_CASE("aligned grids are multiples of 4nq") {
  CHECK(aligned_grid(3, 0.5, 100) % 24 == 0);
  CHECK(aligned_grid(3, 0.5, 100) >= 100);
  CHECK(aligned_grid(2, 0.0, 16) == 16);
}

TEST_CASE("epsilon bound matches its closed form for 2^-k") {
  // pi sum k 2^-(k+n) / (n (1 + 4 pi sum_{k>=n} 2^-k)) = pi 2^{1-n} / (n (1 + 4 pi 2^{1-n}))
  for (long long n : {1LL, 3LL, 6LL}) {
    const double p = std::pow(2.0, 1.0 - static_cast<double>(n));
    const double want = kPi * p / (static_cast<double>(n) * (1.0 + 4.0 * kPi * p));
    CHECK(epsilon_bound(PsiSpec::geometric_q(0.5), n) == doctest::Approx(want).epsilon(1e-13));
  }
}

TEST_CASE("a single harmonic has no weighted tail") {
  CHECK_THROWS_AS(epsilon_bound(PsiSpec::single(5), 5), DegenerateConstruction);
}

TEST_CASE("Phi has unit L1 norm, alternating signs and the expected plateau") {
  for (double beta : {0.0, 0.5, 1.0}) {
    for (long long n : {2LL, 4LL}) {
      const ExtremalConstruction c = geo(beta, n);
      CAPTURE(beta);
      CAPTURE(n);
      CHECK(phi_l1_exact(c) == doctest::Approx(1.0).epsilon(1e-14));
      double l1 = 0.0;
      for (const Piece& p : phi_pieces(c)) l1 += std::fabs(p.c) * (p.b - p.a);
      CHECK(l1 == doctest::Approx(1.0).epsilon(1e-14));
      const GridFunction g = build_phi(c, c.ell_star.m);
      double rect = 0.0;
      for (double v : g.values) rect += std::fabs(v);
      CHECK(rect * g.step() == doctest::Approx(1.0).epsilon(1e-12));
      // Phi is a multiple of sign cos(n t + beta pi / 2) away from cell boundaries
      for (std::size_t j = 0; j < g.m(); j += 7) {
        const double s = std::cos(static_cast<double>(n) * g.t(j) + beta * kPi / 2.0);
        if (std::fabs(s) > 1e-6) CHECK(g.values[j] * s > 0.0);
      }
      CHECK(c.ell_star.interval.lo <= c.t_star);
      CHECK(c.t_star <= c.ell_star.interval.hi);
      CHECK(c.plateau_height > c.off_height);
    }
  }
}

TEST_CASE("plateau certificate holds on a dense grid") {
  const ExtremalConstruction c = geo(1.0, 4);
  const Kernel k(KernelSpec{c.kspec.psi, -c.kspec.beta, c.kspec.n});
  const double lo = c.ell_star.interval.lo, hi = c.ell_star.interval.hi;
  for (int i = 0; i <= 1000; ++i) {
    const double t = lo + (hi - lo) * i / 1000.0;
    CHECK(std::fabs(k.value(t)) * k.scale() > c.norm.hi - c.epsilon);
  }
}

TEST_CASE("deviation at a point matches the grid deviation") {
  const ExtremalConstruction c = geo(0.0, 2);
  const GridFunction d = deviation_F(c, c.ell_star.m);
  for (std::size_t j = 0; j < d.m(); j += d.m() / 16) {
    const DeviationValue v = deviation_at(c, d.t(j));
    CHECK(std::fabs(v.value - d.values[j]) <= 1e-10 + v.err);
  }
}

TEST_CASE("sharpness bounds for q = 1/2") {
  for (long long n : {2LL, 4LL}) {
    const ExtremalConstruction c = geo(0.0, n);
    const SharpnessReport s = sharpness(c, c.ell_star.m);
    CHECK(s.best.value == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(s.best.poly.max_coef() <= 1e-6);
    CHECK(std::fabs(s.rho0.value) >= s.lower_bound - 1e-6);
    CHECK(std::fabs(s.rho0.value) <= s.upper_bound + 1e-9);
    CHECK(s.rho_sup.hi >= std::fabs(s.rho0.value) - s.rho0.err);
    CHECK(s.xi.theta >= -2.0);
    CHECK(s.xi.theta <= 0.0);
  }
}

TEST_CASE("user epsilon is validated") {
  const KernelSpec ks{PsiSpec::geometric_q(0.5), 0.0, 2};
  CHECK_THROWS(build_construction(ks, 1.0, 10.0));
}
