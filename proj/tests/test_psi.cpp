#include "doctest.h"

#include <cmath>
#include <random>

#include "fl/errors.hpp"
#include "fl/psi.hpp"

using namespace fl;

namespace {

// Direct long double summation, stopped when terms fall below 1e-30 of the running sum.
long double brute_tail(const PsiSpec& s, long long n, int p_weight) {
  long double sum = 0.0L;
  for (long long k = n; k < n + 5000000; ++k) {
    const long double term = static_cast<long double>(eval_psi(s, k)) * (p_weight ? (k - n + 1) : 1);
    sum += term;
    if (term < 1e-30L * sum && k > n + 10) break;
  }
  return sum;
}

}  // namespace

TEST_CASE("frozen values for psi(k) = 2^-k") {
  const PsiSpec g = PsiSpec::geometric_q(0.5);
  CHECK(eval_psi(g, 3) == doctest::Approx(0.125).epsilon(1e-15));
  const PsiSpec e = PsiSpec::geometric(1.0);
  CHECK(tail_sum(e, 1, 1e-14) == doctest::Approx(1.0 / (std::exp(1.0) - 1.0)).epsilon(1e-14));
  CHECK(weighted_tail_sum(g, 0, 1e-14) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(weighted_tail_sum(g, 1, 1e-14) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("integral tail of exp(-t)") {
  const IntegralEstimate a = integral_tail(PsiSpec::geometric(1.0), 1.0, 1e-14);
  CHECK(a.I1 == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  CHECK(a.I2 == doctest::Approx(2.0 * std::exp(-1.0)).epsilon(1e-12));
}

TEST_CASE("eta for exp(-t ln 2) is t + 1") {
  const SmoothnessProfile p(PsiSpec::geometric_q(0.5));
  for (double t : {1.0, 3.5, 40.0}) CHECK(p.eta_at(t) == doctest::Approx(t + 1.0).epsilon(1e-12));
}

TEST_CASE("tails agree with direct summation") {
  const PsiSpec specs[] = {PsiSpec::geometric(0.3), PsiSpec::geometric(2.0), PsiSpec::generalized_poisson(1.0, 2.0),
                           PsiSpec::generalized_poisson(1.0, 0.5), PsiSpec::exp_log_squared(),
                           PsiSpec::exp_over_log(), PsiSpec::finite_support({1.0, 0.5, 0.25})};
  for (const PsiSpec& s : specs) {
    for (long long n : {1LL, 2LL, 5LL, 20LL}) {
      CAPTURE(family_name(s.family));
      CAPTURE(n);
      const long double t = brute_tail(s, n, 0);
      const long double w = brute_tail(s, n + 1, 1);
      const double scale = std::exp(log_ref(s, n));
      const Bounded bt = tail_sum_scaled(s, n), bw = weighted_tail_scaled(s, n);
      CHECK(std::fabs(bt.value * scale - static_cast<double>(t)) <= 1e-12 * static_cast<double>(t) + 1e-300);
      CHECK(std::fabs(bw.value * scale - static_cast<double>(w)) <= 1e-11 * static_cast<double>(w) + 1e-300);
    }
  }
}

TEST_CASE("tails are nonincreasing in n") {
  const PsiSpec specs[] = {PsiSpec::geometric(1.0), PsiSpec::loglog_power(), PsiSpec::exp_log_squared(),
                           PsiSpec::exp_over_log(), PsiSpec::generalized_poisson(0.5, 1.5)};
  for (const PsiSpec& s : specs) {
    double prev = tail_sum(s, 1, 1e-12);
    for (long long n = 2; n < 200; n += 7) {
      const double t = tail_sum(s, n, 1e-12);
      CHECK(t <= prev);
      prev = t;
    }
  }
}

TEST_CASE("geometric asymptotic ratio is q / (n (1 - q))") {
  for (double q : {0.1, 0.5, 0.9}) {
    const PsiSpec s = PsiSpec::geometric_q(q);
    for (long long n : {1LL, 10LL, 1000LL}) {
      const double want = q / (static_cast<double>(n) * (1.0 - q));
      CHECK(std::fabs(asymp_ratio(s, n) - want) <= 1e-12 * want);
    }
  }
}

TEST_CASE("D_q report for the geometric family") {
  const DqReport r = dq_report(PsiSpec::geometric_q(0.5), 10);
  CHECK(r.in_dq);
  CHECK(r.q == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(r.epsilon_n == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("characteristics of class M families are consistent") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(1.0, 1e4);
  for (const PsiSpec& s : {PsiSpec::loglog_power(), PsiSpec::exp_log_squared(), PsiSpec::exp_over_log()}) {
    const SmoothnessProfile p(s);
    for (int i = 0; i < 20; ++i) {
      const double t = u(rng);
      CAPTURE(t);
      CHECK(p.alpha_at(t) == doctest::Approx(p.lambda_at(t) / t).epsilon(1e-12));
      CHECK(psi_at(s, p.eta_at(t)) == doctest::Approx(0.5 * psi_at(s, t)).epsilon(1e-9));
    }
  }
}

TEST_CASE("invalid parameters are rejected") {
  CHECK_THROWS_AS(validate(PsiSpec::geometric(-1.0)), DomainError);
  CHECK_THROWS_AS(validate(PsiSpec::finite_support({1.0, -0.5})), DomainError);
  CHECK_THROWS_AS(parse_family("nope"), DomainError);
  CHECK(parse_family("poisson1") == Family::Geometric);
  CHECK(parse_family("explog2") == Family::ExpLogSquared);
}

TEST_CASE("json round trip") {
  const PsiSpec s = PsiSpec::generalized_poisson(0.7, 1.5);
  nlohmann::json j = s;
  const PsiSpec t = j.get<PsiSpec>();
  CHECK(t.family == s.family);
  CHECK(t.alpha == s.alpha);
  CHECK(t.r == s.r);
}
