#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace fl {

enum class Family {
  Geometric,           // psi(k) = exp(-alpha k)
  GeneralizedPoisson,  // psi(k) = exp(-alpha k^r)
  LogLogPower,         // psi(t) = (t+2)^(-ln ln(t+2))
  ExpLogSquared,       // psi(t) = exp(-ln^2(t+1))
  ExpOverLog,          // psi(t) = exp(-(t+2)/ln(t+2))
  FiniteSupport,       // values on 1..K, zero beyond
  UserTable,           // values on 1..K, undefined beyond
};

struct PsiSpec {
  Family family = Family::Geometric;
  double alpha = 1.0;
  double r = 1.0;
  std::vector<double> values;  // values[k-1] = psi(k) for table families
  bool interpolate = false;    // UserTable: linear interpolant between nodes

  static PsiSpec geometric(double alpha);
  static PsiSpec geometric_q(double q);
  static PsiSpec generalized_poisson(double alpha, double r);
  static PsiSpec loglog_power();
  static PsiSpec exp_log_squared();
  static PsiSpec exp_over_log();
  static PsiSpec finite_support(std::vector<double> values);
  static PsiSpec single(long long k, double value = 1.0);
  static PsiSpec user_table(std::vector<double> values, bool interpolate = false);

  bool is_table() const { return family == Family::FiniteSupport || family == Family::UserTable; }
  bool has_continuous_extension() const { return !is_table(); }
  // last index with a possibly nonzero value; 0 means unbounded
  long long support_end() const;
};

// Throws DomainError on invalid parameters or negative/non-finite table entries.
void validate(const PsiSpec& spec);

std::string family_name(Family f);
Family parse_family(const std::string& name);

double eval_psi(const PsiSpec& spec, long long k);
// Continuous extension for t >= 1 (named families, or UserTable with interpolate).
double psi_at(const PsiSpec& spec, double t);

// ln psi and its first two derivatives for named families.
struct LogDerivs {
  double l0, l1, l2;
};
LogDerivs log_derivs(const PsiSpec& spec, double t);

// ln psi(t) is convex for t >= this value (infinity if never).
double log_convex_from(const PsiSpec& spec);

class SmoothnessProfile {
 public:
  explicit SmoothnessProfile(const PsiSpec& spec);
  double lambda_at(double t) const;
  double alpha_at(double t) const;
  double eta_at(double t) const;
  double mu_at(double t) const;

 private:
  PsiSpec spec_;
};

SmoothnessProfile characteristics(const PsiSpec& spec);

// Value with an absolute error bound.
struct Bounded {
  double value = 0.0;
  double err = 0.0;
};

// Scaling reference: ln psi(max(n,1)) for named families, 0 for tables. Scaled sums
// are divided by exp(log_ref) so deep tails stay representable.
double log_ref(const PsiSpec& spec, long long n);

// sum_{k>=a} (k - c)^p psi(k) / exp(ref), p in {0,1,2}, c <= a.
Bounded series_scaled(const PsiSpec& spec, long long a, double c, int p, double ref);
// int_a^inf x^p psi(x) dx / exp(ref) with a tail bound beyond the last panel.
Bounded integral_scaled(const PsiSpec& spec, double a, int p, double ref, double rel_tol = 1e-14);

Bounded tail_sum_scaled(const PsiSpec& spec, long long n);      // sum_{k>=n} psi(k)
Bounded weighted_tail_scaled(const PsiSpec& spec, long long n);  // sum_{k>=1} k psi(k+n)

double tail_sum(const PsiSpec& spec, long long n, double tol);
double weighted_tail_sum(const PsiSpec& spec, long long n, double tol);

// Smallest K >= n - 1 with sum_{k>K} psi(k) / exp(ref) <= tol_scaled; 0 if the
// series has no finite truncation within max_terms terms.
long long truncation_index(const PsiSpec& spec, long long n, double tol_scaled, double ref,
                           long long max_terms);

enum class IntegralStatus { Ok, Precondition };

struct IntegralEstimate {
  double I1 = 0.0, I1_err = 0.0;
  double I2 = 0.0, I2_err = 0.0;
  IntegralStatus status = IntegralStatus::Ok;
  bool lemma_checked = false;
  double lemma_lo = 0.0, lemma_hi = 0.0;  // lambda psi and lambda psi (1 + alpha/(1-alpha))
  bool lemma_holds = false;
};

IntegralEstimate integral_tail(const PsiSpec& spec, double a, double tol);

struct DqReport {
  double q = 0.0;
  bool in_dq = false;  // limit ratio q < 1
  double epsilon_n = 0.0;
  double epsilon_star_n1 = 0.0;
  bool exact_sup = true;  // false when the suprema are scans (lower bounds)
  bool admissible = false;
  double r_n = 0.0;
  double r_star_n1 = 0.0;
};

DqReport dq_report(const PsiSpec& spec, long long n);

double asymp_ratio(const PsiSpec& spec, long long n);

void to_json(nlohmann::json& j, const PsiSpec& s);
void from_json(const nlohmann::json& j, PsiSpec& s);
void to_json(nlohmann::json& j, const DqReport& r);
void to_json(nlohmann::json& j, const IntegralEstimate& e);

}  // namespace fl
