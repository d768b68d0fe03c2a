#include "doctest.h"

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "fl/cli.hpp"
#include "fl/errors.hpp"

using namespace fl;

namespace {

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

std::vector<std::string> fields(const std::string& l) {
  std::vector<std::string> out;
  std::istringstream is(l);
  for (std::string f; std::getline(is, f, ',');) out.push_back(f);
  return out;
}

RunConfig geometric(const std::string& sub) {
  RunConfig c;
  c.subcommand = sub;
  c.family = "geometric";
  c.alpha = 1.0;
  return c;
}

}  // namespace

TEST_CASE("n lists and ranges") {
  CHECK(parse_n_list("1..4") == std::vector<long long>{1, 2, 3, 4});
  CHECK(parse_n_list("2,8, 16") == std::vector<long long>{2, 8, 16});
  CHECK(parse_n_list("1..2,10") == std::vector<long long>{1, 2, 10});
  CHECK_THROWS_AS(parse_n_list("0..3"), DomainError);
  CHECK_THROWS_AS(parse_n_list("5..3"), DomainError);
  CHECK_THROWS_AS(parse_n_list("a"), DomainError);
}

TEST_CASE("beta lists accept rationals") {
  const auto b = parse_beta_list("0,1/2,3/4,1.5");
  REQUIRE(b.size() == 4);
  CHECK(b[1] == 0.5);
  CHECK(b[2] == 0.75);
  CHECK(b[3] == 1.5);
  CHECK_THROWS_AS(parse_beta_list("1/0"), DomainError);
}

TEST_CASE("spec construction from flags") {
  RunConfig c;
  c.family = "geometric";
  c.q = 0.5;
  CHECK(make_spec(c).alpha == doctest::Approx(std::log(2.0)));
  c.family = "finite";
  c.support = "5:1,2:0.5";
  const PsiSpec s = make_spec(c);
  CHECK(s.values == std::vector<double>{0.0, 0.5, 0.0, 0.0, 1.0});
  c.family = "generalized_poisson";
  CHECK_THROWS_AS(make_spec(c), DomainError);
}

TEST_CASE("class-sup over n = 1..8 lies in the closed-form band") {
  RunConfig c = geometric("class-sup");
  c.ns = parse_n_list("1..8");
  std::ostringstream out, err;
  CHECK(run(c, out, err) == 0);
  const auto ls = lines(out.str());
  REQUIRE(ls.size() == 9);
  CHECK(ls[0] == "n,beta,value,err,band_lo,band_hi,theta,status");
  const double q = std::exp(-1.0);
  for (int i = 1; i <= 8; ++i) {
    const auto f = fields(ls[i]);
    REQUIRE(f.size() == 8);
    const double n = i, pn = std::pow(q, n);
    const double v = std::stod(f[2]);
    const double lead = pn / (M_PI * (1.0 - q)), unit = pn * q / (n * (1.0 - q) * (1.0 - q));
    CHECK(v <= lead + 1e-12);
    CHECK(v >= lead - unit - 1e-12);
    CHECK(f[7] == "pass");
  }
}

TEST_CASE("kernel subcommand samples cos(5t)") {
  RunConfig c;
  c.subcommand = "kernel";
  c.family = "finite";
  c.support = "5:1";
  c.ns = {5};
  c.m = 64;
  std::ostringstream out, err;
  REQUIRE(run(c, out, err) == 0);
  const auto ls = lines(out.str());
  REQUIRE(ls.size() == 65);
  for (int j = 1; j <= 64; ++j) {
    const auto f = fields(ls[j]);
    CHECK(std::stod(f[3]) == doctest::Approx(std::cos(5.0 * std::stod(f[2]))).scale(1.0).epsilon(1e-14));
  }
}

TEST_CASE("exit codes") {
  std::ostringstream out, err;
  RunConfig bad = geometric("kernel");
  bad.family = "nope";
  CHECK(run(bad, out, err) == 2);
  RunConfig tol = geometric("norms");
  tol.tol = -1.0;
  CHECK(run(tol, out, err) == 2);
  RunConfig sub = geometric("plot");
  CHECK(run(sub, out, err) == 2);
  RunConfig small = geometric("kernel");
  small.ns = {40};
  small.m = 64;
  CHECK(run(small, out, err) == 2);
  RunConfig missing;
  missing.subcommand = "best-l1";
  missing.input = "/nonexistent/file.csv";
  CHECK(run(missing, out, err) == 2);
}

TEST_CASE("outputs are byte reproducible") {
  for (const char* sub : {"norms", "class-sup", "sweep"}) {
    RunConfig c = geometric(sub);
    c.betas = {0.0, 0.5};
    c.ns = parse_n_list("1..5");
    for (const char* fmt : {"csv", "json"}) {
      c.format = fmt;
      std::ostringstream a, b, err;
      REQUIRE(run(c, a, err) == 0);
      REQUIRE(run(c, b, err) == 0);
      CHECK(a.str() == b.str());
    }
  }
}

TEST_CASE("numbers carry 17 significant digits") {
  RunConfig c = geometric("kernel");
  c.ns = {1};
  c.m = 8;
  std::ostringstream out, err;
  REQUIRE(run(c, out, err) == 0);
  const auto f = fields(lines(out.str())[2]);
  CHECK(std::stod(f[3]) == std::stod(f[3]));
  CHECK(f[3].find('e') == std::string::npos);
  CHECK(f[3].size() >= 17);
}
