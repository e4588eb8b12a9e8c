#include "cknsym/verification.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "cknsym/constants.hpp"
#include "cknsym/errors.hpp"
#include "cknsym/oracle.hpp"
#include "cknsym/regions.hpp"
#include "cknsym/root_solver.hpp"
#include "cknsym/special_functions.hpp"
#include "cknsym/sweep.hpp"

namespace cknsym {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

double rel_err(double a, double b) { return std::abs(a - b) / std::abs(b); }

CheckResult make(const char* id, const char* name, std::string target) {
  CheckResult r;
  r.id = id;
  r.name = name;
  r.target = std::move(target);
  return r;
}

// Records the first failure message; later ones are counted only.
struct Failures {
  int count = 0;
  std::string first;
  void add(const std::string& what) {
    if (count++ == 0) first = what;
  }
  std::string summary() const {
    if (count == 0) return "";
    return "; " + std::to_string(count) + " failure(s), first: " + first;
  }
};

double digamma_of(const VerifyOptions& opts, double z) {
  return opts.digamma ? opts.digamma(z) : digamma(z);
}

RootResult x_star_for(const VerifyOptions& opts, double theta, double p) {
  return x_star(theta, p, opts.tol_root);
}

}  // namespace

CheckResult check_bound_gap_regime(const VerifyOptions& opts) {
  CheckResult r = make("C1", "bound_gap_regime",
                       "L2/L1-1 in [0,0.045) all rows; 1-L2a/L2 in (0,0.02), median in "
                       "[2e-3,1e-2]");
  CknCurveOptions co;
  co.d = 5;
  co.theta = 0.5;
  co.n = 64;
  co.threads = opts.threads;
  const auto rows = ckn_curve(co);

  Failures fails;
  double ratio_min = kInf, ratio_max = -kInf, p_at_max = 0.0;
  std::vector<double> gaps;
  for (const auto& row : rows) {
    if (!row.lambda1 || !row.lambda2 || !row.lambda2_approx) {
      fails.add("missing member at p=" + num(row.p));
      continue;
    }
    const double ratio = *row.lambda2 / *row.lambda1 - 1.0;
    if (ratio > ratio_max) {
      ratio_max = ratio;
      p_at_max = row.p;
    }
    ratio_min = std::min(ratio_min, ratio);
    if (!(ratio >= 0.0 && ratio < 0.045)) {
      fails.add("L2/L1-1=" + sci(ratio) + " at p=" + num(row.p));
    }
    const double gap = 1.0 - *row.lambda2_approx / *row.lambda2;
    gaps.push_back(gap);
    if (!(gap > 0.0 && gap < 0.02)) fails.add("1-L2a/L2=" + sci(gap) + " at p=" + num(row.p));
  }
  double median = kNaN;
  if (!gaps.empty()) {
    std::vector<double> sorted = gaps;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t m = sorted.size();
    median = m % 2 ? sorted[m / 2] : 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]);
    if (!(median >= 2e-3 && median <= 1e-2)) fails.add("median gap " + sci(median));
  }
  const auto [gmin, gmax] = gaps.empty() ? std::pair{kNaN, kNaN}
                                         : std::pair{*std::min_element(gaps.begin(), gaps.end()),
                                                     *std::max_element(gaps.begin(), gaps.end())};
  r.measured = "L2/L1-1 in [" + sci(ratio_min) + ", " + sci(ratio_max) + "] (max at p=" +
               num(p_at_max) + "); 1-L2a/L2 in [" + sci(gmin) + ", " + sci(gmax) +
               "], median " + sci(median) + fails.summary();
  r.passed = fails.count == 0;
  return r;
}

CheckResult check_fs_ordering(const VerifyOptions&) {
  CheckResult r = make("C2", "fs_ordering", "Lambda_star < Lambda_FS on 4 x 8 grid");
  static constexpr double kFractions[3] = {0.25, 0.5, 0.75};
  Failures fails;
  double min_margin = kInf;
  int count = 0;
  for (int d : {2, 3, 4, 5}) {
    const double p_hi = d == 2 ? 6.0 : p_max(d);
    for (int j = 0; j < 8; ++j) {
      const double p = 2.0 + (p_hi - 2.0) * (j + 1) / 9.0;
      // For d = 2 and theta <= vartheta(p,3), q* >= 6 and Lambda_1 has no window,
      // so the grid starts at vartheta(p,3) in every dimension.
      const double lo = std::max(vartheta(p, 3), vartheta(p, d));
      const double theta = lo + (1.0 - lo) * kFractions[j % 3];
      try {
        const double ls = lambda_star(theta, p, d);
        const double lfs = lambda_fs(theta, p, d);
        min_margin = std::min(min_margin, lfs / ls - 1.0);
        if (!(ls < lfs)) fails.add("d=" + std::to_string(d) + " p=" + num(p));
        ++count;
      } catch (const Error& e) {
        fails.add(std::string("d=") + std::to_string(d) + " p=" + num(p) + ": " + e.what());
      }
    }
  }
  r.measured = std::to_string(count) + " points, min LFS/Lstar-1 = " + sci(min_margin) +
               fails.summary();
  r.passed = fails.count == 0 && count == 32;
  return r;
}

CheckResult check_oracle_equivalence(const VerifyOptions& opts) {
  CheckResult r = make("C3", "oracle_equivalence",
                       "rel err <= 1e-6 on 4x4x3 grid; exact case 4/sqrt3 to 1e-10");
  Failures fails;
  const double exact = 4.0 / std::sqrt(3.0);
  double exact_err = kNaN;
  try {
    exact_err = std::max(rel_err(k_star_oracle(1.0, 4.0, 1.0), exact),
                         rel_err(k_star_ckn(1.0, 4.0, 1.0), exact));
    if (!(exact_err <= 1e-10)) fails.add("exact case err " + sci(exact_err));
  } catch (const Error& e) {
    fails.add(std::string("exact case: ") + e.what());
  }
  double worst = 0.0;
  int count = 0;
  if (!opts.quick) {
    for (double theta : {0.6, 0.75, 0.9, 1.0}) {
      for (double p : {2.5, 3.0, 4.0, 5.0}) {
        if (!(theta > vartheta(p, 2))) continue;
        for (double lambda : {0.5, 1.0, 2.0}) {
          try {
            const double e = rel_err(k_star_oracle(theta, p, lambda), k_star_ckn(theta, p, lambda));
            worst = std::max(worst, e);
            if (!(e <= 1e-6)) fails.add("(" + num(theta) + "," + num(p) + "," + num(lambda) + ")");
            ++count;
          } catch (const Error& e) {
            fails.add(std::string(e.what()));
          }
        }
      }
    }
  }
  r.measured = (opts.quick ? std::string("grid skipped (quick)")
                           : std::to_string(count) + " grid points, max rel err " + sci(worst)) +
               "; exact case err " + sci(exact_err) + fails.summary();
  r.passed = fails.count == 0;
  return r;
}

CheckResult check_n_consistency(const VerifyOptions&) {
  CheckResult r = make("C4", "n_consistency",
                       "explicit vs definition <= 1e-10; |N(1,p)-1| <= 1e-12; strictly "
                       "decreasing chains of 8");
  static constexpr double kThetas[5] = {0.55, 0.65, 0.75, 0.85, 0.95};
  static constexpr double kPs[5] = {2.2, 2.5, 3.0, 3.5, 4.0};
  Failures fails;
  double worst_def = 0.0, worst_one = 0.0;
  for (double p : kPs) {
    for (double theta : kThetas) {
      const double e = rel_err(n_coeff(theta, p), n_coeff_from_constants(theta, p));
      worst_def = std::max(worst_def, e);
      if (!(e <= 1e-10)) fails.add("definition mismatch at (" + num(theta) + "," + num(p) + ")");
    }
    const double one = std::abs(n_coeff(1.0, p) - 1.0);
    worst_one = std::max(worst_one, one);
    if (!(one <= 1e-12)) fails.add("N(1," + num(p) + ")-1 = " + sci(one));

    const double lo = vartheta(p, 2);
    double prev = kInf;
    for (int k = 0; k < 8; ++k) {
      const double n = n_coeff(lo + (1.0 - lo) * (k + 1) / 9.0, p);
      if (!(n < prev)) fails.add("chain not decreasing at p=" + num(p));
      prev = n;
    }
  }
  r.measured = "max rel diff " + sci(worst_def) + ", max |N(1,p)-1| " + sci(worst_one) +
               fails.summary();
  r.passed = fails.count == 0;
  return r;
}

CheckResult check_limits(const VerifyOptions&) {
  CheckResult r = make("C5", "limit_consistency",
                       "|L_i(1-eps)-Lstar(1)|/Lstar(1) <= 10 eps; |N0-N(gamma(p-2),p)| <= 1e-3 N0");
  Failures fails;
  double worst_scaled = 0.0, worst_n0 = 0.0;
  const std::pair<double, int> points[3] = {{2.4, 5}, {3.0, 3}, {4.0, 3}};
  for (const auto& [p, d] : points) {
    const double target = lambda_star_theta1(p, d);
    for (double eps : {1e-3, 1e-4}) {
      const double l1 = lambda_1(1.0 - eps, p, d);
      const double l2 = lambda_2(1.0 - eps, p, d);
      for (double li : {l1, l2}) {
        const double scaled = rel_err(li, target) / eps;
        worst_scaled = std::max(worst_scaled, scaled);
        if (!(scaled <= 10.0)) {
          fails.add("(p,d,eps)=(" + num(p) + "," + std::to_string(d) + "," + sci(eps) + ")");
        }
      }
    }
  }
  const double p = 2.0 + 1e-5;
  for (double gamma : {1.0, 1.5, 2.0}) {
    const double n0 = n0_coeff(gamma);
    const double e = std::abs(n0 - n_coeff(gamma * (p - 2.0), p)) / n0;
    worst_n0 = std::max(worst_n0, e);
    if (!(e <= 1e-3)) fails.add("N0 limit at gamma=" + num(gamma));
  }
  r.measured = "max rel err/eps " + num(worst_scaled) + ", max N0 rel diff " + sci(worst_n0) +
               fails.summary();
  r.passed = fails.count == 0;
  return r;
}

namespace {

// Residual, sign-pattern and convexity certificate for one root of g on (lower, inf).
void certify_root(const std::function<double(double)>& g, const std::function<double(double)>& dg,
                  double lower, double root, double tol, const std::string& label, Failures& fails,
                  double& worst_residual) {
  const double res = std::abs(g(root));
  worst_residual = std::max(worst_residual, res / tol);
  if (!(res <= tol)) fails.add(label + ": residual " + sci(res) + " > " + sci(tol));
  if (!(root > lower)) fails.add(label + ": root not above lower end");
  for (int k = 0; k < 64; ++k) {
    const double below = lower + (root - lower) * (k + 1) / 65.0;
    const double above = root + (9.0 * root) * (k + 1) / 65.0;
    if (!(g(below) < 0.0)) fails.add(label + ": g >= 0 below root at x=" + num(below));
    if (!(g(above) > 0.0)) fails.add(label + ": g <= 0 above root at x=" + num(above));
  }
  const double hi = 10.0 * root;
  const double h = 0.25 * (hi - lower) / 65.0;
  for (int k = 0; k < 64; ++k) {
    const double x = lower + (hi - lower) * (k + 1) / 65.0;
    const double second = g(x + h) - 2.0 * g(x) + g(x - h);
    if (!(second > 0.0)) fails.add(label + ": second difference <= 0 at x=" + num(x));
  }
  (void)dg;
}

}  // namespace

CheckResult check_root_certificates(const VerifyOptions& opts) {
  CheckResult r = make("C6", "root_certificates",
                       "|f(x*)|, |f0(x0*)| within solver tolerance; sign pattern 64+64; "
                       "convexity; x* > N^(1/beta)");
  Failures fails;
  double worst = 0.0;
  int roots = 0;
  for (double p : {2.4, 3.0, 4.0, 5.0}) {
    const double lo = vartheta(p, 3);
    for (double frac : {0.3, 0.6, 0.9}) {
      const double theta = lo + (1.0 - lo) * frac;
      const std::string label = "f(theta=" + num(theta) + ",p=" + num(p) + ")";
      try {
        const RootResult rr = x_star_for(opts, theta, p);
        const double n = n_coeff(theta, p);
        const double lower = std::pow(n, 1.0 / beta_exponent(theta, p));
        auto g = [&](double x) { return f_eval(x, theta, p, n).value; };
        auto dg = [&](double x) { return f_eval(x, theta, p, n).derivative; };
        const double scale = std::max(1.0, std::abs(g(2.0 * lower)));
        // The solver stops on |f| <= 1e-12 scale or on a bracket of relative width tol_root.
        const double tol = std::max(1e-12 * scale, std::abs(dg(rr.root)) * opts.tol_root * rr.root);
        if (rr.degenerate) fails.add(label + ": degenerate");
        certify_root(g, dg, lower, rr.root, tol, label, fails, worst);
        ++roots;
      } catch (const Error& e) {
        fails.add(label + ": " + e.what());
      }
    }
  }
  for (double gamma : {0.8, 1.0, 1.5, 2.5, 5.0}) {
    const std::string label = "f0(gamma=" + num(gamma) + ")";
    try {
      const RootResult rr = x0_star(gamma, opts.tol_root);
      const double n0 = n0_coeff(gamma);
      const double lower = std::pow(n0, 1.0 / (1.0 - 1.0 / (4.0 * gamma)));
      auto g = [&](double x) { return f0_eval(x, gamma, n0).value; };
      auto dg = [&](double x) { return f0_eval(x, gamma, n0).derivative; };
      const double tol = std::min(1e-10 * std::max(1.0, n0),
                                  std::max(1e-12 * std::max(1.0, std::abs(g(2.0 * lower))),
                                           std::abs(dg(rr.root)) * opts.tol_root * rr.root));
      certify_root(g, dg, lower, rr.root, tol, label, fails, worst);
      ++roots;
    } catch (const Error& e) {
      fails.add(label + ": " + e.what());
    }
  }
  r.measured = std::to_string(roots) + " roots, max residual/tolerance " + num(worst) +
               fails.summary();
  r.passed = fails.count == 0 && roots == 17;
  return r;
}

CheckResult check_digamma(const VerifyOptions& opts) {
  CheckResult r = make("C7", "digamma_bounds",
                       "1/(2z) < psi(z+1/2)-psi(z) < ln(1+1/(2z))+1/z-2/(2z+1) at 256 z; "
                       "recurrences <= 1e-12");
  Failures fails;
  double min_lower_gap = kInf, min_upper_gap = kInf, worst_psi = 0.0, worst_lg = 0.0;
  for (int k = 0; k < 256; ++k) {
    const double z = 0.25 * std::pow(400.0, k / 255.0);
    const double diff = digamma_of(opts, z + 0.5) - digamma_of(opts, z);
    const double lower = 1.0 / (2.0 * z);
    const double upper = std::log1p(1.0 / (2.0 * z)) + 1.0 / z - 2.0 / (2.0 * z + 1.0);
    min_lower_gap = std::min(min_lower_gap, diff - lower);
    min_upper_gap = std::min(min_upper_gap, upper - diff);
    if (!(lower < diff && diff < upper)) fails.add("psi bounds at z=" + num(z));
    const double e_psi = std::abs(digamma_of(opts, z + 1.0) - digamma_of(opts, z) - 1.0 / z);
    const double e_lg = std::abs(log_gamma(z + 1.0) - log_gamma(z) - std::log(z));
    worst_psi = std::max(worst_psi, e_psi);
    worst_lg = std::max(worst_lg, e_lg);
    if (!(e_psi <= 1e-12)) fails.add("psi recurrence at z=" + num(z) + ": " + sci(e_psi));
    if (!(e_lg <= 1e-12)) fails.add("log-gamma recurrence at z=" + num(z) + ": " + sci(e_lg));
  }
  r.measured = "min gaps to bounds " + sci(min_lower_gap) + " / " + sci(min_upper_gap) +
               "; recurrence errors psi " + sci(worst_psi) + ", lgamma " + sci(worst_lg) +
               fails.summary();
  r.passed = fails.count == 0;
  return r;
}

CheckResult check_wlh_chain(const VerifyOptions&) {
  CheckResult r = make("C8", "wlh_chain",
                       "L0a < L0 < (d-1)(g-3/4) < (d-1)(g-1/4); no overlapping certificates");
  Failures fails;
  int verdicts = 0;
  for (double gamma : {0.8, 1.0, 1.5, 2.5}) {
    for (int d : {2, 3, 5}) {
      const std::string label = "(gamma,d)=(" + num(gamma) + "," + std::to_string(d) + ")";
      const double l0a = lambda_0_approx(gamma, d);
      const double l0 = lambda_0(gamma, d);
      const double c3 = (d - 1) * (gamma - 0.75);
      const double c1 = (d - 1) * (gamma - 0.25);
      if (!(l0a < l0 && l0 < c3 && c3 < c1)) fails.add(label + ": chain violated");
      // The inequality itself needs gamma >= d/4; the chain above does not.
      if (gamma < d / 4.0) continue;
      for (double lambda : {0.5 * l0, l0, 0.5 * (l0 + c1), c1, 1.5 * c1}) {
        const SymmetryVerdict v = classify_wlh(validate_wlh(d, gamma, lambda));
        ++verdicts;
        const bool sym_ok = v.symmetric_bound && lambda <= *v.symmetric_bound;
        const bool brk_ok = lambda > v.breaking_bound;
        if (v.status == SymmetryStatus::Symmetric && (!sym_ok || brk_ok)) {
          fails.add(label + ": Symmetric verdict without exclusive certificate");
        }
        if (v.status == SymmetryStatus::SymmetryBroken && (!brk_ok || sym_ok)) {
          fails.add(label + ": SymmetryBroken verdict without exclusive certificate");
        }
      }
    }
  }
  r.measured = "12 chains, " + std::to_string(verdicts) + " verdicts" + fails.summary();
  r.passed = fails.count == 0;
  return r;
}

CheckResult check_determinism(const VerifyOptions& opts) {
  CheckResult r = make("C9", "determinism", "byte-identical curve output across runs and threads");
  CknCurveOptions co;
  co.d = 5;
  co.theta = 0.5;
  co.n = 64;
  co.threads = 1;
  const std::string first = to_csv(ckn_curve(co));
  const std::string second = to_csv(ckn_curve(co));
  co.threads = std::max(2u, opts.threads);
  const std::string parallel = to_csv(ckn_curve(co));
  r.passed = first == second && first == parallel;
  r.measured = std::to_string(first.size()) + " bytes; repeat " +
               (first == second ? "identical" : "differs") + ", " + std::to_string(co.threads) +
               "-thread " + (first == parallel ? "identical" : "differs");
  return r;
}

std::vector<CheckResult> run_acceptance(const VerifyOptions& opts) {
  return {check_bound_gap_regime(opts),      check_fs_ordering(opts), check_oracle_equivalence(opts),
          check_n_consistency(opts),    check_limits(opts),         check_root_certificates(opts),
          check_digamma(opts),          check_wlh_chain(opts),      check_determinism(opts)};
}

namespace {

CheckResult invariant_k_scaling() {
  CheckResult r = make("I1", "k_star_lambda_scaling", "rel err <= 1e-13 on 3x3x3 grid");
  double worst = 0.0;
  for (double theta : {0.6, 0.8, 1.0}) {
    for (double p : {2.5, 3.0, 4.0}) {
      const double base = k_star_ckn(theta, p, 1.0);
      for (double lambda : {0.5, 2.0, 7.0}) {
        const double expected = base * std::pow(lambda, theta - (p - 2.0) / (2.0 * p));
        worst = std::max(worst, rel_err(k_star_ckn(theta, p, lambda), expected));
      }
    }
  }
  r.passed = worst <= 1e-13;
  r.measured = "max rel err " + sci(worst);
  return r;
}

CheckResult invariant_monotone_constants() {
  CheckResult r = make("I2", "constant_monotonicity",
                       "Lstar(1,p,d) decreasing in p; LFS increasing in theta");
  Failures fails;
  for (int d : {2, 3, 4, 5}) {
    const double hi = d == 2 ? 6.0 : p_max(d);
    double prev = kInf;
    for (int k = 0; k < 16; ++k) {
      const double v = lambda_star_theta1(2.0 + (hi - 2.0) * (k + 1) / 17.0, d);
      if (!(v < prev)) fails.add("Lstar(1,.," + std::to_string(d) + ")");
      prev = v;
    }
    const double p = 2.0 + 0.5 * (hi - 2.0);
    const double lo = vartheta(p, d);
    prev = -kInf;
    for (int k = 0; k < 16; ++k) {
      const double v = lambda_fs(lo + (1.0 - lo) * (k + 1) / 17.0, p, d);
      if (!(v > prev)) fails.add("LFS(.," + num(p) + "," + std::to_string(d) + ")");
      prev = v;
    }
  }
  r.passed = fails.count == 0;
  r.measured = "4 dimensions x 16 points" + fails.summary();
  return r;
}

CheckResult invariant_q_star() {
  CheckResult r = make("I3", "q_star_range", "q* in (p, p_max) for vartheta < theta < 1; q*(1,p)=p");
  Failures fails;
  for (int d : {3, 4, 5}) {
    for (int j = 0; j < 8; ++j) {
      const double p = 2.0 + (p_max(d) - 2.0) * (j + 1) / 9.0;
      if (q_star(1.0, p) != p) fails.add("q*(1," + num(p) + ") != p");
      const double lo = vartheta(p, d);
      for (double frac : {0.1, 0.5, 0.9}) {
        const double q = q_star(lo + (1.0 - lo) * frac, p);
        if (!(q > p && q < p_max(d))) fails.add("q* out of range at d=" + std::to_string(d));
      }
    }
  }
  r.passed = fails.count == 0;
  r.measured = "72 points" + fails.summary();
  return r;
}

CheckResult invariant_lambda2_sandwich() {
  CheckResult r = make("I4", "lambda2_sandwich", "L2a < L2 < (d-1) alpha / (4(p-2))");
  Failures fails;
  int count = 0;
  for (int d : {2, 3, 5}) {
    const double hi = d == 2 ? 6.0 : p_max(d);
    for (int j = 0; j < 6; ++j) {
      const double p = 2.0 + (hi - 2.0) * (j + 1) / 7.0;
      const double lo = std::max(vartheta(p, 3), vartheta(p, d));
      for (double frac : {0.2, 0.5, 0.8}) {
        const double theta = lo + (1.0 - lo) * frac;
        const double l2 = lambda_2(theta, p, d);
        const double l2a = lambda_2_approx(theta, p, d);
        const double cap = (d - 1) * alpha_exponent(theta, p) / (4.0 * (p - 2.0));
        if (!(l2a < l2 && l2 < cap)) fails.add("(" + num(theta) + "," + num(p) + "," +
                                                std::to_string(d) + ")");
        ++count;
      }
    }
  }
  r.passed = fails.count == 0;
  r.measured = std::to_string(count) + " points" + fails.summary();
  return r;
}

CheckResult invariant_limit_monotone() {
  CheckResult r = make("I5", "limit_monotone",
                       "|L_i(1-eps)-Lstar(1)| decreasing over eps = 1e-2, 1e-3, 1e-4");
  Failures fails;
  const std::pair<double, int> points[3] = {{2.4, 5}, {3.0, 3}, {4.0, 3}};
  for (const auto& [p, d] : points) {
    const double target = lambda_star_theta1(p, d);
    double prev1 = kInf, prev2 = kInf;
    for (double eps : {1e-2, 1e-3, 1e-4}) {
      const double e1 = std::abs(lambda_1(1.0 - eps, p, d) - target);
      const double e2 = std::abs(lambda_2(1.0 - eps, p, d) - target);
      if (!(e1 < prev1 && e2 < prev2)) fails.add("(p,d)=(" + num(p) + "," + std::to_string(d) + ")");
      prev1 = e1;
      prev2 = e2;
    }
  }
  r.passed = fails.count == 0;
  r.measured = "3 points" + fails.summary();
  return r;
}

CheckResult invariant_classify_ckn() {
  CheckResult r = make("I6", "classify_ckn_soundness",
                       "no overlapping certificates; bounds reproduce bit-identically");
  Failures fails;
  int count = 0;
  for (int d : {2, 3, 5}) {
    const double hi = d == 2 ? 6.0 : p_max(d);
    for (int j = 0; j < 4; ++j) {
      const double p = 2.0 + (hi - 2.0) * (j + 1) / 5.0;
      const double lo = std::max(vartheta(p, 3), vartheta(p, d));
      const double theta = lo + 0.5 * (1.0 - lo);
      const double ls = lambda_star(theta, p, d);
      const double lfs = lambda_fs(theta, p, d);
      for (double lambda : {0.5 * ls, ls, 0.5 * (ls + lfs), lfs, 2.0 * lfs}) {
        const CknPoint pt = validate_ckn(d, p, theta, lambda);
        const SymmetryVerdict a = classify_ckn(pt);
        const SymmetryVerdict b = classify_ckn(pt);
        ++count;
        if (a.status != b.status || a.symmetric_bound != b.symmetric_bound ||
            a.breaking_bound != b.breaking_bound) {
          fails.add("verdict not reproducible");
        }
        const bool sym = a.symmetric_bound && lambda <= *a.symmetric_bound;
        const bool brk = lambda > a.breaking_bound;
        if (a.status == SymmetryStatus::Symmetric && (!sym || brk)) fails.add("bad Symmetric");
        if (a.status == SymmetryStatus::SymmetryBroken && (!brk || sym)) fails.add("bad Broken");
      }
    }
  }
  r.passed = fails.count == 0;
  r.measured = std::to_string(count) + " verdicts" + fails.summary();
  return r;
}

CheckResult invariant_mu_minimizer() {
  CheckResult r = make("I7", "oracle_theta1_minimizer", "mu argmin = lambda to 1e-6 relative");
  double worst = 0.0;
  Failures fails;
  for (double p : {2.5, 3.0, 4.0, 5.0}) {
    for (double lambda : {0.5, 1.0, 2.0}) {
      try {
        worst = std::max(worst, rel_err(k_star_oracle_detail(1.0, p, lambda).mu_argmin, lambda));
      } catch (const Error& e) {
        fails.add(e.what());
      }
    }
  }
  r.passed = fails.count == 0 && worst <= 1e-6;
  r.measured = "max rel err " + sci(worst) + fails.summary();
  return r;
}

CheckResult invariant_quadrature() {
  CheckResult r = make("I8", "quadrature_self_consistency",
                       "halving tolerance moves each integral <= 1e-11 relative");
  double worst = 0.0;
  QuadratureOptions fine;
  fine.tol_rel *= 0.5;
  for (double p : {2.5, 3.0, 4.0, 5.0}) {
    for (double mu : {0.5, 1.0, 2.0}) {
      const SechProfile prof = sech_profile(p, mu);
      const ProfileIntegrals a = profile_integrals(prof);
      const ProfileIntegrals b = profile_integrals(prof, fine);
      worst = std::max({worst, rel_err(a.i2, b.i2), rel_err(a.igrad, b.igrad),
                        rel_err(a.ip, b.ip)});
    }
  }
  r.passed = worst <= 1e-11;
  r.measured = "max rel change " + sci(worst);
  return r;
}

CheckResult invariant_gamma_ratio() {
  CheckResult r = make("I9", "gamma_ratio_identity", "gamma_ratio(a,a) = 1 within 1 ulp");
  double worst = 0.0;
  for (int k = 0; k < 256; ++k) {
    const double a = 0.25 * std::pow(400.0, k / 255.0);
    worst = std::max(worst, std::abs(gamma_ratio(a, a) - 1.0));
  }
  r.passed = worst <= 2.220446049250313e-16;
  r.measured = "max |ratio-1| " + sci(worst);
  return r;
}

CheckResult invariant_csv_round_trip(const VerifyOptions& opts) {
  CheckResult r = make("I10", "csv_round_trip", "parse + re-emit is byte-identical");
  CknCurveOptions co;
  co.d = 3;
  co.theta = 0.8;
  co.n = 16;
  co.threads = opts.threads;
  const std::string ckn = to_csv(ckn_curve(co));
  WlhCurveOptions wo;
  wo.d = 4;
  wo.gamma_min = 0.5;
  wo.gamma_max = 3.0;
  wo.n = 12;
  const std::string wlh = to_csv(wlh_curve(wo));
  const bool ok1 = to_csv(parse_ckn_csv(ckn)) == ckn;
  const bool ok2 = to_csv(parse_wlh_csv(wlh)) == wlh;
  r.passed = ok1 && ok2;
  r.measured = std::string("ckn ") + (ok1 ? "identical" : "differs") + ", wlh " +
               (ok2 ? "identical" : "differs");
  return r;
}

CheckResult invariant_n0() {
  CheckResult r = make("I11", "n0_above_one", "N0(gamma) > 1 on (3/4, 10]");
  double smallest = kInf;
  for (int k = 1; k <= 128; ++k) smallest = std::min(smallest, n0_coeff(0.75 + 9.25 * k / 128.0));
  r.passed = smallest > 1.0;
  r.measured = "min N0 - 1 = " + sci(smallest - 1.0);
  return r;
}

CheckResult invariant_perturbation() {
  CheckResult r = make("I12", "oracle_perturbation", "8 even bumps never lower the quotient");
  Failures fails;
  double margin = kInf;
  for (const auto& [theta, p] : {std::pair{0.75, 3.0}, std::pair{1.0, 4.0}}) {
    const PerturbationReport rep = perturbation_spot_check(theta, p, 1.0);
    margin = std::min(margin, rep.smallest_perturbed / rep.minimum - 1.0);
    if (!rep.passed) fails.add("(" + num(theta) + "," + num(p) + ")");
  }
  r.passed = fails.count == 0;
  r.measured = "min relative increase " + sci(margin) + fails.summary();
  return r;
}

}  // namespace

std::vector<CheckResult> run_invariants(const VerifyOptions& opts) {
  std::vector<CheckResult> out = {invariant_k_scaling(),       invariant_monotone_constants(),
                                  invariant_q_star(),          invariant_lambda2_sandwich(),
                                  invariant_limit_monotone(),  invariant_classify_ckn(),
                                  invariant_gamma_ratio(),     invariant_csv_round_trip(opts),
                                  invariant_n0()};
  if (!opts.quick) {
    out.push_back(invariant_mu_minimizer());
    out.push_back(invariant_quadrature());
    out.push_back(invariant_perturbation());
  }
  return out;
}

std::string format_check(const CheckResult& r) {
  std::ostringstream os;
  os << (r.passed ? "PASS" : "FAIL") << "  " << r.id << "  " << r.name << "  measured: " << r.measured
     << "  target: " << r.target;
  return os.str();
}

}  // namespace cknsym
