#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "fl/errors.hpp"
#include "fl/kernel.hpp"

using namespace fl;

namespace {

constexpr double kPi = std::numbers::pi;

// Direct series in long double.
double brute_kernel(const PsiSpec& s, double beta, long long n, double t) {
  long double sum = 0.0L;
  for (long long k = n; k < n + 200000; ++k) {
    const long double p = eval_psi(s, k);
    if (p == 0.0L && k > n + 100) break;
    sum += p * std::cos(static_cast<long double>(k) * t - static_cast<long double>(beta) * kPi / 2.0L);
    if (p < 1e-25L && k > n + 10) break;
  }
  return static_cast<double>(sum);
}

}  // namespace

TEST_CASE("kernel matches direct summation") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ut(-kPi, kPi), ub(0.0, 4.0);
  const PsiSpec specs[] = {PsiSpec::geometric_q(0.5), PsiSpec::geometric_q(0.9), PsiSpec::generalized_poisson(1.0, 2.0),
                           PsiSpec::exp_over_log(), PsiSpec::single(5)};
  for (const PsiSpec& s : specs) {
    for (long long n : {1LL, 3LL, 8LL}) {
      const double beta = ub(rng);
      const Kernel k(KernelSpec{s, beta, n});
      for (int i = 0; i < 25; ++i) {
        const double t = ut(rng);
        const double want = brute_kernel(s, beta, n, t);
        CAPTURE(family_name(s.family));
        CAPTURE(n);
        CAPTURE(t);
        CHECK(std::fabs(k.value(t) * k.scale() - want) <= 1e-12 + k.eval_err() * k.scale());
      }
    }
  }
}

TEST_CASE("beta shifts: Psi_{beta+2} = -Psi_beta and Psi_{beta+4} = Psi_beta") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ut(-kPi, kPi), ub(0.0, 2.0);
  for (int i = 0; i < 50; ++i) {
    const double beta = ub(rng), t = ut(rng);
    const KernelSpec a{PsiSpec::geometric_q(0.7), beta, 4}, b{a.psi, beta + 2.0, 4}, c{a.psi, beta + 4.0, 4};
    const double va = eval_kernel(a, t, 1e-15);
    CHECK(eval_kernel(b, t, 1e-15) == doctest::Approx(-va).epsilon(1e-12).scale(1.0));
    CHECK(eval_kernel(c, t, 1e-15) == doctest::Approx(va).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("finite support psi(5) = 1 gives cos(5t)") {
  const GridFunction g = sample_kernel(KernelSpec{PsiSpec::single(5), 0.0, 5}, 64, 1e-15);
  for (std::size_t j = 0; j < g.m(); ++j) CHECK(g.values[j] == doctest::Approx(std::cos(5.0 * g.t(j))).scale(1.0).epsilon(1e-14));
}

TEST_CASE("parallel sampling is bitwise equal to the serial reference") {
  const KernelSpec ks{PsiSpec::geometric_q(0.95), 0.3, 17};
  const GridFunction a = sample_kernel(ks, 4096, 1e-14), b = sample_kernel_serial(ks, 4096, 1e-14);
  CHECK(a.values == b.values);
}

TEST_CASE("sampling needs m >= 4n") {
  CHECK_THROWS_AS(sample_kernel(KernelSpec{PsiSpec::geometric(1.0), 0.0, 20}, 64, 1e-12), ResolutionError);
}

TEST_CASE("continuum mode agrees with direct mode where both apply") {
  const PsiSpec s = PsiSpec::loglog_power();
  const Kernel k(KernelSpec{s, 0.5, 40});
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ut(0.3, 3.0);
  for (int i = 0; i < 20; ++i) {
    const double t = ut(rng);
    const double want = brute_kernel(s, 0.5, 40, t);
    // the series converges slowly; compare against the tail-corrected value loosely
    CHECK(std::fabs(k.value(t) * k.scale() - want) <= 1e-6 * std::fabs(k.tail().value * k.scale()));
  }
}

TEST_CASE("Dirichlet kernel and Lebesgue constants") {
  CHECK(dirichlet_eval(3, 0.0) == doctest::Approx(2.5));
  CHECK(dirichlet_eval(3, 1.0) == doctest::Approx(0.5 + std::cos(1.0) + std::cos(2.0)).epsilon(1e-14));
  // L_k from an independent adaptive quadrature (tests/oracles/lebesgue_oracle.py)
  const std::pair<long long, double> frozen[] = {{0, 1.0},
                                                 {1, 1.435991124176917},
                                                 {2, 1.642188435222121},
                                                 {3, 1.778322861525876},
                                                 {10, 2.223356924153685},
                                                 {100, 3.138780092654848}};
  for (auto [k, v] : frozen) {
    CAPTURE(k);
    CHECK(std::fabs(lebesgue_constant(k + 1) - v) <= 1e-12);
  }
}
