// cknsym: point evaluation, curve sweeps and self-verification.
//
// Exit codes: 0 success, 1 verification failure, 2 domain or I/O error, 64 usage error.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cknsym/constants.hpp"
#include "cknsym/errors.hpp"
#include "cknsym/regions.hpp"
#include "cknsym/root_solver.hpp"
#include "cknsym/special_functions.hpp"
#include "cknsym/sweep.hpp"
#include "cknsym/verification.hpp"

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitVerifyFailed = 1;
constexpr int kExitDomain = 2;
constexpr int kExitUsage = 64;

struct IoError : cknsym::Error {
  explicit IoError(const std::string& msg) : Error("io", msg) {}
};

json error_json(const std::string& kind, const std::string& message) {
  return json{{"error", {{"kind", kind}, {"message", message}}}};
}

// Evaluates fn into obj[key]; failures land in the diagnostics list instead.
template <typename Fn>
void try_put(json& obj, const char* key, json& diagnostics, Fn&& fn) {
  try {
    obj[key] = fn();
  } catch (const cknsym::Error& e) {
    obj[key] = nullptr;
    const std::string msg = e.what();
    const std::string prefix = std::string(key) + ": ";
    diagnostics.push_back(msg.rfind(prefix, 0) == 0 ? msg : prefix + msg);
  }
}

json root_json(const cknsym::RootResult& r) {
  return json{{"root", r.root},
              {"residual", r.residual},
              {"iterations", r.iterations},
              {"bracket", {r.bracket_lo, r.bracket_hi}},
              {"degenerate", r.degenerate}};
}

json verdict_json(const cknsym::SymmetryVerdict& v) {
  json out{{"status", cknsym::to_string(v.status)}};
  out["symmetric_bound"] = v.symmetric_bound ? json(*v.symmetric_bound) : json(nullptr);
  out["breaking_bound"] = v.breaking_bound;
  out["basis"] = v.basis;
  out["diagnostic"] = v.diagnostic;
  return out;
}

unsigned default_jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

// ---- eval ------------------------------------------------------------------

struct EvalCknArgs {
  int d = 0;
  double theta = 0.0;
  double p = 0.0;
  std::optional<double> lambda;
};

json eval_ckn(const EvalCknArgs& a) {
  using namespace cknsym;
  const CknPoint pt = validate_ckn(a.d, a.p, a.theta, a.lambda);
  const double theta = pt.theta();
  const double p = pt.p();
  const int d = pt.d();
  const double lambda_eval = a.lambda.value_or(1.0);

  json report;
  json diagnostics = json::array();
  report["input"] = {{"d", d}, {"theta", theta}, {"p", p}};
  report["input"]["lambda"] = a.lambda ? json(*a.lambda) : json(nullptr);

  json derived{{"vartheta", pt.vartheta()},
               {"a_c", critical_a(d)},
               {"p_max", pt.p_max()},
               {"critical_theta", pt.critical()},
               {"alpha", alpha_exponent(theta, p)}};
  try_put(derived, "q_star", diagnostics, [&] { return q_star(theta, p); });
  derived["beta"] = beta_exponent(theta, p);
  report["derived"] = derived;

  json constants;
  try_put(constants, "k_star", diagnostics, [&] { return k_star_ckn(theta, p, lambda_eval); });
  constants["k_star_lambda"] = lambda_eval;
  try_put(constants, "n_coeff", diagnostics, [&] { return n_coeff(theta, p); });
  try_put(constants, "n_coeff_definition", diagnostics,
          [&] { return n_coeff_from_constants(theta, p); });
  constants["lambda_fs"] = lambda_fs(theta, p, d);
  try_put(constants, "lambda_star_theta1", diagnostics, [&] { return lambda_star_theta1(p, d); });
  report["constants"] = constants;

  json roots;
  try_put(roots, "x_star", diagnostics, [&] { return root_json(x_star(theta, p)); });
  report["roots"] = roots;

  json bounds;
  try_put(bounds, "lambda1", diagnostics, [&] {
    const Lambda1Result r = lambda_1_detail(theta, p, d);
    return json{{"value", r.value}, {"q_argmax", r.q_argmax}};
  });
  try_put(bounds, "lambda2", diagnostics, [&] { return lambda_2(theta, p, d); });
  try_put(bounds, "lambda2_approx", diagnostics, [&] { return lambda_2_approx(theta, p, d); });
  try_put(bounds, "lambda_star", diagnostics, [&] {
    const LambdaStarResult r = lambda_star_detail(theta, p, d);
    return json{{"value", r.value}, {"case", to_string(r.basis)}, {"diagnostic", r.diagnostic}};
  });
  report["bounds"] = bounds;

  if (a.lambda && d >= 3) {
    try_put(report, "k_interval", diagnostics, [&] {
      const KBracket b = k_interval(theta, p, *a.lambda, d);
      return json{{"lower", b.lower}, {"upper", b.upper}, {"frak_c", frak_c(theta, p)}};
    });
  }
  if (a.lambda) {
    try_put(report, "verdict", diagnostics, [&] { return verdict_json(classify_ckn(pt)); });
  }
  report["diagnostics"] = diagnostics;
  return report;
}

struct EvalWlhArgs {
  int d = 0;
  double gamma = 0.0;
  std::optional<double> lambda;
};

json eval_wlh(const EvalWlhArgs& a) {
  using namespace cknsym;
  const WlhPoint pt = validate_wlh(a.d, a.gamma, a.lambda);
  const double gamma = pt.gamma();
  const int d = pt.d();
  const double lambda_eval = a.lambda.value_or(1.0);

  json report;
  json diagnostics = json::array();
  report["input"] = {{"d", d}, {"gamma", gamma}};
  report["input"]["lambda"] = a.lambda ? json(*a.lambda) : json(nullptr);
  report["derived"] = {{"a_c", critical_a(d)},
                       {"beta0", 1.0 - 1.0 / (4.0 * gamma)},
                       {"lambda0_valid", pt.lambda0_valid()}};

  json constants;
  try_put(constants, "k_star", diagnostics, [&] { return k_star_wlh(gamma, lambda_eval, d); });
  constants["k_star_lambda"] = lambda_eval;
  try_put(constants, "n0", diagnostics, [&] { return n0_coeff(gamma); });
  constants["lambda_break"] = wlh_breaking_threshold(gamma, d);
  report["constants"] = constants;

  json roots;
  try_put(roots, "x0_star", diagnostics, [&] { return root_json(x0_star(gamma)); });
  report["roots"] = roots;

  json bounds;
  try_put(bounds, "lambda0", diagnostics, [&] { return lambda_0(gamma, d); });
  try_put(bounds, "lambda0_approx", diagnostics, [&] { return lambda_0_approx(gamma, d); });
  report["bounds"] = bounds;

  if (a.lambda) {
    try_put(report, "verdict", diagnostics, [&] { return verdict_json(classify_wlh(pt)); });
  }
  report["diagnostics"] = diagnostics;
  return report;
}

// ---- curve -----------------------------------------------------------------

struct CurveArgs {
  std::string out;
  std::string format = "csv";
  unsigned jobs = 0;
};

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    if (!std::cout) throw IoError("failed writing to standard output");
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  out.close();
  if (!out) throw IoError("failed writing '" + path + "'");
}

// ---- verify ----------------------------------------------------------------

int run_verify(double tol_root, bool quick, std::optional<double> digamma_fault, unsigned jobs) {
  cknsym::VerifyOptions opts;
  opts.tol_root = tol_root;
  opts.quick = quick;
  opts.threads = jobs;
  if (digamma_fault) {
    const double rel = *digamma_fault;
    opts.digamma = [rel](double z) { return cknsym::digamma(z) * (1.0 + rel); };
  }
  std::vector<cknsym::CheckResult> results = cknsym::run_acceptance(opts);
  for (auto& r : cknsym::run_invariants(opts)) results.push_back(std::move(r));

  int failed = 0;
  for (const auto& r : results) {
    std::cout << cknsym::format_check(r) << '\n';
    if (!r.passed) ++failed;
  }
  std::cout << (results.size() - failed) << "/" << results.size() << " checks passed"
            << (quick ? " (quick)" : "") << '\n';
  return failed == 0 ? 0 : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symmetry regions for Caffarelli-Kohn-Nirenberg and weighted log-Hardy inequalities"};
  app.require_subcommand(1);

  // eval
  auto* eval = app.add_subcommand("eval", "Evaluate every derived quantity at one parameter point");
  eval->require_subcommand(1);
  EvalCknArgs eck;
  std::optional<double> eck_lambda;
  auto* eval_ckn_cmd = eval->add_subcommand("ckn", "CKN point (d, theta, p)");
  eval_ckn_cmd->add_option("--d", eck.d, "Dimension")->required();
  eval_ckn_cmd->add_option("--theta", eck.theta, "Interpolation exponent")->required();
  eval_ckn_cmd->add_option("--p", eck.p, "Lebesgue exponent")->required();
  eval_ckn_cmd->add_option("--lambda", eck_lambda, "Lambda; adds the symmetry verdict");

  EvalWlhArgs ewl;
  std::optional<double> ewl_lambda;
  auto* eval_wlh_cmd = eval->add_subcommand("wlh", "Weighted log-Hardy point (d, gamma)");
  eval_wlh_cmd->add_option("--d", ewl.d, "Dimension")->required();
  eval_wlh_cmd->add_option("--gamma", ewl.gamma, "Exponent gamma")->required();
  eval_wlh_cmd->add_option("--lambda", ewl_lambda, "Lambda; adds the symmetry verdict");

  // curve
  auto* curve = app.add_subcommand("curve", "Sweep the symmetry bounds along p or gamma");
  curve->require_subcommand(1);
  CurveArgs cargs;
  cknsym::CknCurveOptions cko;
  std::optional<double> ck_theta;
  auto* curve_ckn_cmd = curve->add_subcommand("ckn", "Sweep p across the admissible interval");
  curve_ckn_cmd->add_option("--d", cko.d, "Dimension")->required();
  curve_ckn_cmd->add_option("--theta", ck_theta, "Interpolation exponent");
  curve_ckn_cmd->add_flag("--critical-theta", cko.critical_theta, "Use theta = vartheta(p,d) per row");
  curve_ckn_cmd->add_option("--n", cko.n, "Number of p points")->required()->check(CLI::PositiveNumber);

  cknsym::WlhCurveOptions wlo;
  auto* curve_wlh_cmd = curve->add_subcommand("wlh", "Sweep gamma over [gamma-min, gamma-max]");
  curve_wlh_cmd->add_option("--d", wlo.d, "Dimension")->required();
  curve_wlh_cmd->add_option("--gamma-min", wlo.gamma_min, "First gamma")->required();
  curve_wlh_cmd->add_option("--gamma-max", wlo.gamma_max, "Last gamma")->required();
  curve_wlh_cmd->add_option("--n", wlo.n, "Number of gamma points")->required()->check(CLI::PositiveNumber);

  for (auto* cmd : {curve_ckn_cmd, curve_wlh_cmd}) {
    cmd->add_option("--out", cargs.out, "Output path (default: standard output)");
    cmd->add_option("--format", cargs.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--jobs", cargs.jobs, "Worker threads (default: hardware concurrency)");
  }

  // verify
  auto* verify = app.add_subcommand("verify", "Run the acceptance criteria and module invariants");
  double tol_root = 1e-12;
  bool quick = false;
  std::optional<double> digamma_fault;
  unsigned verify_jobs = 0;
  verify->add_option("--tol-root", tol_root, "Relative bracket tolerance for the root solvers")
      ->check(CLI::PositiveNumber);
  verify->add_flag("--quick", quick, "Skip the variational-oracle checks");
  verify->add_option("--inject-digamma-fault", digamma_fault,
                     "Scale digamma by (1 + REL) inside the checks");
  verify->add_option("--jobs", verify_jobs, "Worker threads for sweeps");

  try {
    app.parse(argc, argv);
    if (*curve_ckn_cmd && !cko.critical_theta && !ck_theta) {
      throw CLI::RequiredError("--theta (or --critical-theta)");
    }
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\nRun with --help for usage.\n";
    return kExitUsage;
  }

  try {
    if (*eval_ckn_cmd) {
      eck.lambda = eck_lambda;
      std::cout << eval_ckn(eck).dump(2) << '\n';
    } else if (*eval_wlh_cmd) {
      ewl.lambda = ewl_lambda;
      std::cout << eval_wlh(ewl).dump(2) << '\n';
    } else if (*curve_ckn_cmd) {
      if (ck_theta) cko.theta = *ck_theta;
      cko.threads = cargs.jobs ? cargs.jobs : default_jobs();
      const auto rows = cknsym::ckn_curve(cko);
      emit(cargs.format == "json" ? cknsym::to_json(rows) : cknsym::to_csv(rows), cargs.out);
    } else if (*curve_wlh_cmd) {
      wlo.threads = cargs.jobs ? cargs.jobs : default_jobs();
      const auto rows = cknsym::wlh_curve(wlo);
      emit(cargs.format == "json" ? cknsym::to_json(rows) : cknsym::to_csv(rows), cargs.out);
    } else if (*verify) {
      return run_verify(tol_root, quick, digamma_fault, verify_jobs ? verify_jobs : default_jobs());
    }
  } catch (const cknsym::Error& e) {
    std::cout << error_json(e.kind(), e.what()).dump(2) << '\n';
    return kExitDomain;
  }
  return 0;
}
