#include "doctest.h"

#include <cmath>
#include <limits>

#include "fl/verify.hpp"

using namespace fl;

TEST_CASE("classify") {
  const Band band{0.0, 1.0, "x"};
  CHECK(classify({0.4, 0.5, 0.0}, band, {}) == Status::Pass);
  CHECK(classify({1.1, 1.2, 0.0}, band, {}) == Status::Fail);
  CHECK(classify({-1.0, 2.0, 0.0}, band, {}) == Status::Inconclusive);
  CHECK(classify({0.4, 0.5, 0.0}, band, {{"c", 2.0, 2.0, 2.0, -1.0, 0.0}}) == Status::Fail);
  // a degenerate band only needs the enclosure to touch it
  CHECK(classify({0.9, 1.1, 0.0}, Band{1.0, 1.0, "y"}, {}) == Status::Pass);
}

TEST_CASE("lemma and class reports pass for q = 1/2") {
  const PsiSpec s = PsiSpec::geometric_q(0.5);
  for (long long n : {1LL, 5LL}) {
    for (const auto& r : verify_kernel_norms(s, 0.5, n)) CHECK(r.pass());
    CHECK(verify_class_sup(s, 1.5, n).pass());
    CHECK(verify_geometric_exact(std::log(2.0), 0.0, n).pass());
  }
}

TEST_CASE("class M membership and the first n with alpha(n) <= 1/4") {
  CHECK(in_class_M(PsiSpec::exp_over_log()));
  CHECK(in_class_M(PsiSpec::generalized_poisson(1.0, 0.5)));
  CHECK_FALSE(in_class_M(PsiSpec::generalized_poisson(1.0, 2.0)));
  CHECK_FALSE(in_class_M(PsiSpec::single(3)));
  for (const PsiSpec& s : {PsiSpec::loglog_power(), PsiSpec::exp_log_squared(), PsiSpec::exp_over_log()}) {
    const long long n = first_n_alpha_below(s, 0.25);
    REQUIRE(n > 1);
    const SmoothnessProfile p(s);
    CHECK(p.alpha_at(static_cast<double>(n)) <= 0.25);
    CHECK(p.alpha_at(static_cast<double>(n - 1)) > 0.25);
  }
  CHECK(first_n_alpha_below(PsiSpec::exp_over_log(), 0.25) == 18);
}

TEST_CASE("Lebesgue inequality on a single harmonic is an equality case") {
  // phi = cos(nt): E_n(phi)_{L1} = 4 and the deviation is psi(n) cos(n t - beta pi / 2)
  const long long n = 3;
  TrigPoly phi(static_cast<int>(n));
  phi.a[n - 1] = 1.0;
  for (const auto& r : verify_lebesgue(PsiSpec::geometric_q(0.5), 0.0, n, phi)) CHECK(r.pass());
}

TEST_CASE("extremal reports") {
  for (const auto& r : verify_extremal(PsiSpec::geometric_q(0.5), 1.0, 4)) {
    CAPTURE(r.case_id);
    CHECK(r.pass());
  }
  const auto skipped = verify_extremal(PsiSpec::single(5), 0.0, 5);
  REQUIRE(skipped.size() == 1);
  CHECK(skipped[0].status == Status::Skipped);
}

TEST_CASE("sweep rows") {
  const auto rows = sweep(PsiSpec::geometric_q(0.5), 0.0, {2, 4, 8});
  REQUIRE(rows.size() == 3);
  for (const SweepRow& r : rows) {
    CHECK(r.form == "geometric_exact");
    CHECK(r.asymp_ratio == doctest::Approx(1.0 / static_cast<double>(r.n)).epsilon(1e-12));
    CHECK(r.residual >= -1.0 - 1e-9);
    CHECK(r.residual <= 1e-9);
  }
  CHECK(sweep(PsiSpec::generalized_poisson(1.0, 2.0), 0.0, {4})[0].form == "gp_fast");
  CHECK(std::isnan(sweep(PsiSpec::generalized_poisson(1.0, 2.0), 0.0, {4})[0].alpha_model));
  CHECK(sweep(PsiSpec::finite_support({1.0, 0.5, 0.25}), 0.0, {1})[0].form == "general_tail");
}

TEST_CASE("quick suite passes and serializes infinities as null") {
  const auto rs = run_suite("quick");
  const SuiteSummary s = summarize(rs);
  CHECK(s.fail == 0);
  CHECK(s.inconclusive == 0);
  CHECK(s.pass > 0);
  VerificationReport r;
  r.band = {-std::numeric_limits<double>::infinity(), 1.0, "x"};
  nlohmann::json j = r;
  CHECK(j["band"]["lo"].is_null());
  CHECK_FALSE(j.contains("runtime_ms"));
}

TEST_CASE("unknown suite") { CHECK_THROWS(run_suite("nope")); }
