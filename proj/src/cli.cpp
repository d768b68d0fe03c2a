#include "fl/cli.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "CLI11.hpp"
#include "fl/errors.hpp"
#include "fl/extremal.hpp"
#include "fl/l1.hpp"
#include "fl/norms.hpp"
#include "fl/parallel.hpp"
#include "fl/verify.hpp"

namespace fl {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw DomainError("empty list item in '" + s + "'");
    out.push_back(item.substr(b, e - b + 1));
  }
  if (out.empty()) throw DomainError("empty list");
  return out;
}

long long to_ll(const std::string& s) {
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &pos);
  } catch (const std::exception&) {
    throw DomainError("not an integer: '" + s + "'");
  }
  if (pos != s.size()) throw DomainError("not an integer: '" + s + "'");
  return v;
}

double to_double(const std::string& s) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw DomainError("not a number: '" + s + "'");
  }
  if (pos != s.size() || !std::isfinite(v)) throw DomainError("not a finite number: '" + s + "'");
  return v;
}

// Output sink: the file named by c.out, else the stream given to run().
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (path.empty()) return;
    file_.open(path, std::ios::binary);
    if (!file_) throw DomainError("cannot open output file: " + path);
    os_ = &file_;
  }
  std::ostream& operator*() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

void dump(std::ostream& os, const nlohmann::json& j) { os << j.dump(2) << '\n'; }

struct Case {
  double beta;
  long long n;
};

std::vector<Case> cases(const RunConfig& c) {
  std::vector<Case> out;
  for (double b : c.betas)
    for (long long n : c.ns) out.push_back({b, n});
  return out;
}

// Runs f over all cases in parallel; the first exception in case order is rethrown.
template <class T, class F>
std::vector<T> fan_out(const std::vector<Case>& cs, F&& f) {
  std::vector<T> out(cs.size());
  std::vector<std::exception_ptr> errs(cs.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long long i = 0; i < static_cast<long long>(cs.size()); ++i) {
    try {
      out[i] = f(cs[i]);
    } catch (...) {
      errs[i] = std::current_exception();
    }
  }
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
  return out;
}

Certified times(Certified c, double s) {
  c.lo *= s;
  c.hi *= s;
  return c;
}

int cmd_kernel(const RunConfig& c, const PsiSpec& spec, std::ostream& os) {
  nlohmann::json js = nlohmann::json::array();
  if (c.format == "csv") os << "n,beta,t,value\n";
  for (const Case& k : cases(c)) {
    const std::size_t m = c.m > 0 ? c.m : std::max<long long>(256, 16 * k.n);
    if (m < 4 * static_cast<std::size_t>(k.n)) throw ResolutionError("kernel sampling needs m >= 4n");
    const Kernel ker(KernelSpec{spec, k.beta, k.n}, c.tol.value_or(0.0));
    std::vector<double> v = sample_scaled(ker, m);
    for (double& x : v) x *= ker.scale();
    const GridFunction gf(std::move(v));
    if (c.format == "csv") {
      for (std::size_t j = 0; j < m; ++j)
        os << k.n << ',' << fmt17(k.beta) << ',' << fmt17(gf.t(j)) << ',' << fmt17(gf.values[j]) << '\n';
    } else {
      js.push_back({{"n", k.n}, {"beta", k.beta}, {"samples", gf}});
    }
  }
  if (c.format == "json") dump(os, js);
  return 0;
}

int cmd_norms(const RunConfig& c, const PsiSpec& spec, std::ostream& os) {
  const auto cs = cases(c);
  const auto rows = fan_out<NormTriple>(cs, [&](const Case& k) {
    const Kernel ker(KernelSpec{spec, k.beta, k.n});
    const double tol = c.tol ? *c.tol / ker.scale() : 0.0;
    return kernel_norms(ker, tol, c.m, false);
  });
  if (c.format == "json") {
    dump(os, rows);
    return 0;
  }
  write_norms_csv_header(os);
  for (const NormTriple& t : rows) write_norms_csv_row(os, t);
  return 0;
}

int cmd_class_sup(const RunConfig& c, const PsiSpec& spec, std::ostream& os) {
  struct Row {
    Case k;
    Certified value;
    ThetaEstimate th;
    Status status = Status::Skipped;
  };
  const auto cs = cases(c);
  const auto rows = fan_out<Row>(cs, [&](const Case& k) {
    const Kernel ker(KernelSpec{spec, k.beta, k.n});
    const double s = ker.scale();
    const int m = c.m > 0 ? c.m : static_cast<int>(std::min<long long>(1 << 20, std::max<long long>(4096, 64 * k.n)));
    const Certified v = times(class_supremum(ker, c.tol ? *c.tol / s : 0.0, m, false), s);
    const Bounded tail{ker.tail().value * s, ker.tail().err * s};
    const Bounded wt{ker.weighted_tail().value * s, ker.weighted_tail().err * s};
    const ThetaEstimate th = extract_theta(v, tail, wt, k.n, BandForm::ClassSup);
    const double extra = std::max(0.0, th.err - v.err());
    const Status st = classify(v, Band{th.value_lo - extra, th.value_hi + extra, "class_sup_band"},
                               {{"Theta", th.theta, th.theta_lo, th.theta_hi, th.band_lo, th.band_hi}});
    return Row{k, v, th, st};
  });
  bool failed = false;
  for (const Row& r : rows) failed = failed || r.status == Status::Fail;
  if (c.format == "json") {
    nlohmann::json js = nlohmann::json::array();
    for (const Row& r : rows)
      js.push_back({{"n", r.k.n},
                    {"beta", r.k.beta},
                    {"value", r.value},
                    {"band_lo", r.th.value_lo},
                    {"band_hi", r.th.value_hi},
                    {"theta", r.th},
                    {"status", status_name(r.status)}});
    dump(os, js);
  } else {
    os << "n,beta,value,err,band_lo,band_hi,theta,status\n";
    for (const Row& r : rows)
      os << r.k.n << ',' << fmt17(r.k.beta) << ',' << fmt17(r.value.mid()) << ',' << fmt17(r.value.err()) << ','
         << fmt17(r.th.value_lo) << ',' << fmt17(r.th.value_hi) << ',' << fmt17(r.th.theta) << ','
         << status_name(r.status) << '\n';
  }
  return failed ? 1 : 0;
}

int cmd_best_l1(const RunConfig& c, std::ostream& os) {
  std::ifstream in(c.input, std::ios::binary);
  if (!in) throw DomainError("cannot open input CSV: " + c.input);
  const GridFunction gf = read_csv(in);
  const double tol = c.tol.value_or(1e-9);
  std::vector<L1ApproxResult> rs;
  for (long long n : c.ns) rs.push_back(best_l1(gf, n, tol));
  if (c.format == "json") {
    nlohmann::json js = nlohmann::json::array();
    for (std::size_t i = 0; i < rs.size(); ++i) js.push_back({{"n", c.ns[i]}, {"result", rs[i]}});
    dump(os, js);
    return 0;
  }
  os << "n,value,gap,method,grid_m\n";
  for (std::size_t i = 0; i < rs.size(); ++i)
    os << c.ns[i] << ',' << fmt17(rs[i].value) << ',' << fmt17(rs[i].gap) << ',' << rs[i].method << ','
       << rs[i].grid_m << '\n';
  return 0;
}

int cmd_extremal(const RunConfig& c, const PsiSpec& spec, std::ostream& os, std::ostream& err) {
  nlohmann::json samples = nlohmann::json::array();
  nlohmann::json verification = nlohmann::json::array();
  bool failed = false;
  if (c.format == "csv") os << "n,beta,t,phi,F,deviation\n";
  for (const Case& k : cases(c)) {
    const ExtremalConstruction ec =
        build_construction(KernelSpec{spec, k.beta, k.n}, c.e_target, c.epsilon, c.m, c.tol.value_or(0.0));
    const std::size_t m = ec.ell_star.m;
    const SharpnessReport sr = sharpness(ec, m);
    const auto reports = verify_extremal(ec, sr);
    for (const auto& r : reports) failed = failed || r.status == Status::Fail;
    verification.push_back({{"construction", ec}, {"sharpness", sr}, {"reports", reports}});
    const GridFunction phi = build_phi(ec, m);
    const GridFunction F = build_F(ec, m);
    const GridFunction dev = deviation_F(ec, m);
    if (c.format == "csv") {
      for (std::size_t j = 0; j < m; ++j)
        os << k.n << ',' << fmt17(k.beta) << ',' << fmt17(phi.t(j)) << ',' << fmt17(phi.values[j]) << ','
           << fmt17(F.values[j]) << ',' << fmt17(dev.values[j]) << '\n';
    } else {
      samples.push_back({{"n", k.n}, {"beta", k.beta}, {"phi", phi}, {"F", F}, {"deviation", dev}});
    }
  }
  if (c.format == "json") {
    dump(os, {{"samples", samples}, {"verification", verification}});
  } else if (c.out.empty()) {
    dump(err, verification);
  } else {
    std::ofstream vj(c.out + ".json", std::ios::binary);
    if (!vj) throw DomainError("cannot open output file: " + c.out + ".json");
    dump(vj, verification);
  }
  return failed ? 1 : 0;
}

void write_reports_csv(std::ostream& os, const std::vector<VerificationReport>& rs) {
  os << "case_id,status,value,err,band_lo,band_hi,form\n";
  for (const auto& r : rs)
    os << r.case_id << ',' << status_name(r.status) << ',' << fmt17(r.computed.mid()) << ','
       << fmt17(r.computed.err()) << ',' << fmt17(r.band.lo) << ',' << fmt17(r.band.hi) << ',' << r.band.form
       << '\n';
}

int cmd_verify_all(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const VerifyOptions o{c.m, 0.0, false};
  const auto reports = run_suite(c.suite, o);
  const SuiteSummary s = summarize(reports);
  std::ostream& table = c.out.empty() ? err : out;
  Sink sink(c.out, out);
  if (c.format == "csv") {
    write_reports_csv(*sink, reports);
  } else {
    dump(*sink, {{"suite", c.suite},
                 {"summary",
                  {{"pass", s.pass}, {"fail", s.fail}, {"inconclusive", s.inconclusive}, {"skipped", s.skipped}}},
                 {"reports", reports}});
  }
  write_summary_table(table, reports);
  return s.fail > 0 ? 1 : 0;
}

int cmd_sweep(const RunConfig& c, const PsiSpec& spec, std::ostream& os) {
  const VerifyOptions o{c.m, 0.0, false};
  nlohmann::json js = nlohmann::json::array();
  if (c.format == "csv") os << "n,beta,asymp_ratio,alpha_model,class_sup,class_sup_err,form,residual,residual_err\n";
  for (double beta : c.betas) {
    for (const SweepRow& r : sweep(spec, beta, c.ns, o)) {
      if (c.format == "csv") {
        os << r.n << ',' << fmt17(beta) << ',' << fmt17(r.asymp_ratio) << ',' << fmt17(r.alpha_model) << ','
           << fmt17(r.class_sup.mid()) << ',' << fmt17(r.class_sup.err()) << ',' << r.form << ','
           << fmt17(r.residual) << ',' << fmt17(r.residual_err) << '\n';
      } else {
        js.push_back({{"n", r.n},
                      {"beta", beta},
                      {"asymp_ratio", r.asymp_ratio},
                      {"alpha_model", r.alpha_model},
                      {"class_sup", r.class_sup},
                      {"form", r.form},
                      {"residual", r.residual},
                      {"residual_err", r.residual_err}});
      }
    }
  }
  if (c.format == "json") dump(os, js);
  return 0;
}

bool is_usage_error(const std::exception& e) {
  return dynamic_cast<const DomainError*>(&e) || dynamic_cast<const UnsupportedError*>(&e) ||
         dynamic_cast<const ResolutionError*>(&e) || dynamic_cast<const PreconditionError*>(&e);
}

}  // namespace

std::vector<long long> parse_n_list(const std::string& s) {
  std::vector<long long> out;
  for (const std::string& item : split(s, ',')) {
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(to_ll(item));
      continue;
    }
    const long long a = to_ll(item.substr(0, dots)), b = to_ll(item.substr(dots + 2));
    if (b < a) throw DomainError("empty range: " + item);
    if (b - a >= 1000000) throw DomainError("range too long: " + item);
    for (long long n = a; n <= b; ++n) out.push_back(n);
  }
  for (long long n : out)
    if (n < 1) throw DomainError("n must be >= 1");
  return out;
}

std::vector<double> parse_beta_list(const std::string& s) {
  std::vector<double> out;
  for (const std::string& item : split(s, ',')) {
    const auto slash = item.find('/');
    if (slash == std::string::npos) {
      out.push_back(to_double(item));
      continue;
    }
    const long long p = to_ll(item.substr(0, slash)), q = to_ll(item.substr(slash + 1));
    if (q <= 0) throw DomainError("rational beta needs a positive denominator: " + item);
    out.push_back(static_cast<double>(p) / static_cast<double>(q));
  }
  return out;
}

PsiSpec make_spec(const RunConfig& c) {
  const Family f = parse_family(c.family);
  PsiSpec spec;
  switch (f) {
    case Family::Geometric:
      if (c.alpha && c.q) throw DomainError("give --alpha or --q, not both");
      if (c.q) {
        if (!(*c.q > 0.0 && *c.q < 1.0)) throw DomainError("--q must lie in (0, 1)");
        spec = PsiSpec::geometric_q(*c.q);
      } else if (c.alpha) {
        spec = PsiSpec::geometric(*c.alpha);
      } else {
        throw DomainError("geometric needs --alpha or --q");
      }
      break;
    case Family::GeneralizedPoisson:
      if (!c.alpha || !c.r) throw DomainError("generalized_poisson needs --alpha and --r");
      spec = PsiSpec::generalized_poisson(*c.alpha, *c.r);
      break;
    case Family::LogLogPower: spec = PsiSpec::loglog_power(); break;
    case Family::ExpLogSquared: spec = PsiSpec::exp_log_squared(); break;
    case Family::ExpOverLog: spec = PsiSpec::exp_over_log(); break;
    case Family::FiniteSupport:
    case Family::UserTable: {
      if (c.support.empty()) throw DomainError(c.family + " needs --support k:v,...");
      std::vector<double> v;
      for (const std::string& item : split(c.support, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) throw DomainError("support entries are k:v, got '" + item + "'");
        const long long k = to_ll(item.substr(0, colon));
        if (k < 1 || k > 10000000) throw DomainError("support index out of range: " + item);
        if (static_cast<long long>(v.size()) < k) v.resize(k, 0.0);
        v[k - 1] = to_double(item.substr(colon + 1));
      }
      spec = f == Family::FiniteSupport ? PsiSpec::finite_support(v) : PsiSpec::user_table(v);
      break;
    }
  }
  validate(spec);
  return spec;
}

void validate(const RunConfig& c) {
  static const std::vector<std::string> subs{"kernel", "norms", "class-sup", "best-l1", "extremal", "verify-all", "sweep"};
  if (std::find(subs.begin(), subs.end(), c.subcommand) == subs.end())
    throw DomainError("unknown subcommand: " + c.subcommand);
  if (c.tol && !(*c.tol > 0.0)) throw DomainError("--tol must be > 0");
  if (c.m < 0) throw DomainError("--m must be >= 0");
  if (c.format != "csv" && c.format != "json") throw DomainError("--format must be csv or json");
  for (long long n : c.ns)
    if (n < 1) throw DomainError("n must be >= 1");
  if (c.subcommand == "best-l1" && c.input.empty()) throw DomainError("best-l1 needs an input CSV");
  if (!(c.e_target > 0.0)) throw DomainError("--e must be > 0");
  if (c.epsilon < 0.0) throw DomainError("--epsilon must be >= 0");
  if (c.subcommand != "verify-all" && c.subcommand != "best-l1") make_spec(c);
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    validate(c);
    if (c.subcommand == "verify-all") return cmd_verify_all(c, out, err);
    Sink sink(c.out, out);
    if (c.subcommand == "best-l1") return cmd_best_l1(c, *sink);
    const PsiSpec spec = make_spec(c);
    if (c.subcommand == "kernel") return cmd_kernel(c, spec, *sink);
    if (c.subcommand == "norms") return cmd_norms(c, spec, *sink);
    if (c.subcommand == "class-sup") return cmd_class_sup(c, spec, *sink);
    if (c.subcommand == "extremal") return cmd_extremal(c, spec, *sink, err);
    return cmd_sweep(c, spec, *sink);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_usage_error(e) ? 2 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

int run_cli(int argc, char** argv) {
  configure_threads();
  CLI::App app{"Fourier sums on (psi,beta)-integral classes: kernels, norms, best L1 approximation, verification"};
  app.require_subcommand(1);

  RunConfig c;
  std::string betas = "0", ns = "1";
  std::optional<double> alpha, r, q, tol;
  auto common = [&](CLI::App* s, bool psi, bool grid) {
    if (psi) {
      s->add_option("--family", c.family, "psi family")->capture_default_str();
      s->add_option("--alpha", alpha, "decay parameter");
      s->add_option("--r", r, "exponent (generalized_poisson)");
      s->add_option("--q", q, "ratio exp(-alpha) (geometric)");
      s->add_option("--support", c.support, "table values k:v,k:v");
      s->add_option("--beta", betas, "comma list, rationals allowed")->capture_default_str();
    }
    s->add_option("--n", ns, "range a..b or comma list")->capture_default_str();
    if (grid) s->add_option("--m", c.m, "grid size (0 = default)");
    s->add_option("--tol", tol, "absolute tolerance");
    s->add_option("--format", c.format, "csv (default) or json");
    s->add_option("--out", c.out, "output path (default stdout)");
  };
  common(app.add_subcommand("kernel", "sample Psi_{beta,n} on a uniform grid"), true, true);
  common(app.add_subcommand("norms", "sup, Chebyshev-centered and half-shift norms"), true, true);
  common(app.add_subcommand("class-sup", "class supremum of the Fourier sum deviation"), true, true);
  auto* bl = app.add_subcommand("best-l1", "best L1 approximation of a sampled function");
  common(bl, false, false);
  bl->add_option("input", c.input, "CSV with columns t,value")->required();
  auto* ex = app.add_subcommand("extremal", "extremal construction, F and its deviation");
  common(ex, true, true);
  ex->add_option("--e", c.e_target, "L1 norm of Phi")->capture_default_str();
  ex->add_option("--epsilon", c.epsilon, "plateau tolerance (0 = automatic)");
  auto* va = app.add_subcommand("verify-all", "run a verification suite");
  va->add_option("--suite", c.suite, "default or quick")->capture_default_str();
  va->add_option("--m", c.m, "seed grid (0 = default)");
  va->add_option("--format", c.format, "json (default) or csv");
  va->add_option("--out", c.out, "output path (JSON to stdout without it)");
  common(app.add_subcommand("sweep", "asymptotic ratio and corollary residuals over n"), true, true);

  c.format = "";
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  c.subcommand = app.get_subcommands().front()->get_name();
  if (c.format.empty()) c.format = c.subcommand == "verify-all" ? "json" : "csv";
  c.alpha = alpha;
  c.r = r;
  c.q = q;
  c.tol = tol;
  try {
    c.betas = parse_beta_list(betas);
    c.ns = parse_n_list(ns);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return run(c, std::cout, std::cerr);
}

}  // namespace fl
