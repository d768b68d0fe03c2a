#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fl/psi.hpp"

namespace fl {

struct RunConfig {
  std::string subcommand;
  std::string family = "geometric";
  std::optional<double> alpha, r, q;
  std::string support;  // "k:v,k:v"
  std::vector<double> betas{0.0};
  std::vector<long long> ns{1};
  int m = 0;                    // 0 = per-subcommand default
  std::optional<double> tol;    // absolute
  std::string format = "csv";   // csv | json
  std::string out;              // empty = stdout
  std::string suite = "default";
  std::string input;            // best-l1 input CSV
  double e_target = 1.0;
  double epsilon = 0.0;         // 0 = automatic
};

// "a..b" ranges and comma lists, mixed freely: "1..4,8,16".
std::vector<long long> parse_n_list(const std::string& s);
// Comma list of decimals or rationals "p/q".
std::vector<double> parse_beta_list(const std::string& s);
// Throws DomainError on unknown families, missing or invalid parameters.
PsiSpec make_spec(const RunConfig& c);
void validate(const RunConfig& c);

// Runs one subcommand, writing artifacts to out (or c.out) and diagnostics to err.
// Exit codes: 0 success, 1 verification failure or numerical error, 2 usage error.
int run(const RunConfig& c, std::ostream& out, std::ostream& err);

int run_cli(int argc, char** argv);

}  // namespace fl
