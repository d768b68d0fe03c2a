#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fl/extremal.hpp"
#include "fl/kernel.hpp"
#include "fl/maximize.hpp"
#include "fl/trigpoly.hpp"

namespace fl {

enum class Status { Pass, Fail, Inconclusive, Skipped };
std::string status_name(Status s);

struct Band {
  double lo = 0.0;
  double hi = 0.0;
  std::string form;
};

// An extracted coefficient (Theta, xi, ...) with its admissible range. Unbounded
// ends are +-infinity and serialize as null.
struct Coefficient {
  std::string name;
  double value = 0.0;
  double lo = 0.0, hi = 0.0;  // enclosure implied by the error terms
  double admissible_lo = 0.0, admissible_hi = 0.0;
};

struct VerificationReport {
  std::string case_id;
  Certified computed;  // absolute units
  Band band;
  std::vector<Coefficient> coefficients;
  Status status = Status::Skipped;
  std::string note;
  double runtime_ms = -1.0;  // negative: not recorded

  bool pass() const { return status == Status::Pass; }
};

struct VerifyOptions {
  int m = 0;           // branch and bound seed grid; 0 = max(4096, 64 n)
  double tol = 0.0;    // enclosure width, scaled units; 0 = automatic
  bool timing = false; // record runtime_ms (breaks byte reproducibility)
};

// Status from the band, the certificate width and the coefficient ranges:
// Inconclusive when the certificate is wider than a nondegenerate band, otherwise
// Pass iff [computed.lo, computed.hi] meets the band and every coefficient enclosure
// meets its admissible range.
Status classify(const Certified& computed, const Band& band, const std::vector<Coefficient>& coefs);

// Three reports (I1, I2, I3) in the band [tail - (pi/n) wt, tail]; the ordering
// I3 <= I2 <= I1 is part of the I2 and I3 checks.
std::vector<VerificationReport> verify_kernel_norms(const PsiSpec& spec, double beta, long long n,
                                              const VerifyOptions& o = {});

// Class supremum in [tail/pi - wt/n, tail/pi].
VerificationReport verify_class_sup(const PsiSpec& spec, double beta, long long n,
                                        const VerifyOptions& o = {});

// Closed-form band for psi(k) = exp(-alpha k).
VerificationReport verify_geometric_exact(double alpha, double beta, long long n, const VerifyOptions& o = {});

// Upper half: f = J phi, sup |f - S_{n-1} f| <= (1/pi) tail E_n(phi)_{L1}. For families
// of class M with alpha(n) < 1/4 a second report checks the two-parameter upper band.
std::vector<VerificationReport> verify_lebesgue(const PsiSpec& spec, double beta, long long n,
                                                        const TrigPoly& phi, const VerifyOptions& o = {});
// Grid input: bandlimited samples are converted exactly, otherwise the check runs on
// grid values without a certificate.
std::vector<VerificationReport> verify_lebesgue(const PsiSpec& spec, double beta, long long n,
                                                        const GridFunction& phi, const VerifyOptions& o = {});

// Sharpness half through the extremal construction.
std::vector<VerificationReport> verify_extremal(const PsiSpec& spec, double beta, long long n,
                                                double e_target = 1.0, const VerifyOptions& o = {});
// Reports for a given construction and its sharpness data.
std::vector<VerificationReport> verify_extremal(const ExtremalConstruction& c, const SharpnessReport& s);

// Named family of class M: positive, decreasing, convex, lambda nondecreasing.
bool in_class_M(const PsiSpec& spec);
// Smallest n with alpha(n) <= thr (alpha decreasing); 0 when none below 2^62.
long long first_n_alpha_below(const PsiSpec& spec, double thr = 0.25);

VerificationReport verify_M_class(const PsiSpec& spec, double beta, long long n, const VerifyOptions& o = {});

std::vector<VerificationReport> verify_corollaries(const PsiSpec& spec, double beta,
                                                   const std::vector<long long>& n_range,
                                                   const VerifyOptions& o = {});

// Per-n table: asymp_ratio, alpha/(1-alpha) for class M, the class supremum and the
// normalized residual of the family's leading-term formula (geometric_exact, gp_fast,
// gp_slow, loglog, explog2, expoverlog; general_tail for tables). NaN marks values that
// do not apply.
struct SweepRow {
  long long n = 0;
  double asymp_ratio = 0.0;
  double alpha_model = 0.0;
  Certified class_sup;
  std::string form;
  double residual = 0.0, residual_err = 0.0;
};
std::vector<SweepRow> sweep(const PsiSpec& spec, double beta, const std::vector<long long>& n_range,
                            const VerifyOptions& o = {});

VerificationReport verify_asymp_condition(const PsiSpec& spec, const std::vector<long long>& n_range,
                                          double threshold = 1.0);

// Named suites: "default" and "quick". Cases run in parallel; the output order is the
// case order.
std::vector<VerificationReport> run_suite(const std::string& name, const VerifyOptions& o = {});

// Counts of each status.
struct SuiteSummary {
  int pass = 0, fail = 0, inconclusive = 0, skipped = 0;
};
SuiteSummary summarize(const std::vector<VerificationReport>& reports);
void write_summary_table(std::ostream& os, const std::vector<VerificationReport>& reports);

void to_json(nlohmann::json& j, const Band& b);
void to_json(nlohmann::json& j, const Coefficient& c);
void to_json(nlohmann::json& j, const VerificationReport& r);

}  // namespace fl
