#include "cknsym/regions.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "cknsym/errors.hpp"
#include "cknsym/root_solver.hpp"
#include "golden_section.hpp"

namespace cknsym {
namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

void require_p(double p, int d, const char* fn) {
  require(d >= 2, std::string(fn) + ": dimension must be >= 2");
  require(std::isfinite(p) && p > 2.0 && p < p_max(d),
          std::string(fn) + ": p must lie in (2, p_max(d)), got " + fmt(p));
}

bool is_critical(double theta, double p, int d) {
  return std::abs(theta - vartheta(p, d)) <= kCriticalThetaTol;
}

// Domain shared by lambda_2 and lambda_2_approx.
void require_lambda2_domain(double theta, double p, int d, const char* fn) {
  require_p(p, d, fn);
  require(p < 6.0, std::string(fn) + ": p must be < 6");
  require(std::isfinite(theta) && theta < 1.0, std::string(fn) + ": theta must be < 1");
  if (d <= 3) {
    require(theta > vartheta(p, 3), std::string(fn) + ": theta must exceed vartheta(p,3) = " +
                                        fmt(vartheta(p, 3)) + " for d <= 3, got " + fmt(theta));
  } else {
    require(theta >= vartheta(p, d) - kCriticalThetaTol,
            std::string(fn) + ": theta must be >= vartheta(p,d), got " + fmt(theta));
  }
  require(alpha_exponent(theta, p) > 0.0, std::string(fn) + ": alpha must be > 0");
}

}  // namespace

double lambda_1_objective(double q, double theta, double p, int d) {
  const double first = lambda_star_theta1(q, d);
  double pi = 0.0;
  try {
    pi = std::exp(log_pi_star(theta, p, q));
  } catch (const DegenerateError&) {
    // Pi* -> inf as q -> q*+; the second member vanishes in that limit.
    return 0.0;
  }
  const double second = theta * lambda_star_theta1(p, d) / ((1.0 - theta) * pi + theta);
  return std::min(first, second);
}

Lambda1Result lambda_1_detail(double theta, double p, int d, const Lambda1Options& opts) {
  require_p(p, d, "lambda_1");
  require(std::isfinite(theta) && theta < 1.0, "lambda_1: theta must be < 1");
  require(theta > vartheta(p, d) && !is_critical(theta, p, d),
          "lambda_1: theta must exceed vartheta(p,d) = " + fmt(vartheta(p, d)) + " strictly");
  require(opts.grid_points >= 3, "lambda_1: grid needs at least 3 points");

  const double q_lo = q_star(theta, p);
  const double q_hi = p_max(d);
  const double width = q_hi - q_lo;
  if (q_lo >= q_hi - 2.0 * opts.margin * width) {
    throw DegenerateError("lambda_1: q* = " + fmt(q_lo) + " leaves no room below q_max = " +
                          fmt(q_hi));
  }
  const double a = q_lo + opts.margin * width;
  const double b = q_hi - opts.margin * width;
  const int n = opts.grid_points;
  std::vector<double> grid(n);
  std::vector<double> values(n);
  for (int i = 0; i < n; ++i) {
    grid[i] = a + (b - a) * i / (n - 1);
    values[i] = lambda_1_objective(grid[i], theta, p, d);
  }
  const auto best = static_cast<int>(std::max_element(values.begin(), values.end()) - values.begin());
  const double lo = grid[std::max(best - 1, 0)];
  const double hi = grid[std::min(best + 1, n - 1)];
  auto [q_ref, neg] = detail::golden_minimize(
      [&](double q) { return -lambda_1_objective(q, theta, p, d); }, lo, hi, opts.q_tol_rel);
  if (-neg > values[best]) return {-neg, q_ref};
  return {values[best], grid[best]};
}

double lambda_1(double theta, double p, int d, const Lambda1Options& opts) {
  return lambda_1_detail(theta, p, d, opts).value;
}

double lambda_2(double theta, double p, int d) {
  require_lambda2_domain(theta, p, d, "lambda_2");
  const double root = x_star(theta, p).root;
  return 0.25 * (d - 1.0) * alpha_exponent(theta, p) / ((p - 2.0) * root);
}

double lambda_2_approx(double theta, double p, int d) {
  require_lambda2_domain(theta, p, d, "lambda_2_approx");
  require(theta > vartheta(p, 3), "lambda_2_approx: theta must exceed vartheta(p,3)");
  const double n = n_coeff(theta, p);
  const double beta = beta_exponent(theta, p);
  const double alpha = alpha_exponent(theta, p);
  const double bt6 = beta * theta * (6.0 - p);
  const double n_root = std::pow(n, 1.0 / beta);
  const double num = bt6 - alpha * (1.0 - theta + beta * theta / n_root);
  const double den = bt6 * n_root - alpha * (beta * theta + 1.0 - theta);
  return (d - 1.0) * alpha / (4.0 * (p - 2.0)) * num / den;
}

const char* to_string(SymmetryCase c) {
  switch (c) {
    case SymmetryCase::ThetaOne: return "theta_one";
    case SymmetryCase::DimTwoLambda1: return "d2_lambda1";
    case SymmetryCase::DimTwoLambdaStar: return "d2_lambda_star";
    case SymmetryCase::CriticalLambda2: return "critical_lambda2";
    case SymmetryCase::SubcriticalLambdaStar: return "subcritical_lambda_star";
  }
  return "unknown";
}

namespace {

// max(Lambda_1, Lambda_2); Lambda_1 drops out when its q-window (q*, q_max) is empty.
LambdaStarResult combine_members(double theta, double p, int d, const Lambda1Options& opts,
                                 SymmetryCase basis) {
  const double l2 = lambda_2(theta, p, d);
  try {
    const double l1 = lambda_1(theta, p, d, opts);
    return {std::max(l1, l2), basis, l1, l2, ""};
  } catch (const DegenerateError& e) {
    return {l2, basis, std::nullopt, l2, std::string("lambda_1 undefined: ") + e.what()};
  }
}

}  // namespace

LambdaStarResult lambda_star_detail(double theta, double p, int d, const Lambda1Options& opts) {
  require_p(p, d, "lambda_star");
  require(std::isfinite(theta) && theta <= 1.0, "lambda_star: theta must be <= 1");
  require(theta >= vartheta(p, d) - kCriticalThetaTol,
          "lambda_star: theta must be >= vartheta(p,d) = " + fmt(vartheta(p, d)));

  if (theta == 1.0) {
    return {lambda_star_theta1(p, d), SymmetryCase::ThetaOne, std::nullopt, std::nullopt, ""};
  }
  if (d == 2) {
    require(theta > vartheta(p, 2) && !is_critical(theta, p, 2),
            "lambda_star: no symmetry case applies at d = 2, theta = vartheta(p,2)");
    if (theta <= vartheta(p, 3)) {
      const double l1 = lambda_1(theta, p, d, opts);
      return {l1, SymmetryCase::DimTwoLambda1, l1, std::nullopt, ""};
    }
    return combine_members(theta, p, d, opts, SymmetryCase::DimTwoLambdaStar);
  }
  if (is_critical(theta, p, d)) {
    if (d == 3) {
      throw DegenerateError(
          "degenerate critical case: d = 3 and theta = vartheta(p,3) give alpha = 0, "
          "so Lambda_2 vanishes");
    }
    const double l2 = lambda_2(vartheta(p, d), p, d);
    return {l2, SymmetryCase::CriticalLambda2, std::nullopt, l2, ""};
  }
  return combine_members(theta, p, d, opts, SymmetryCase::SubcriticalLambdaStar);
}

double lambda_star(double theta, double p, int d, const Lambda1Options& opts) {
  return lambda_star_detail(theta, p, d, opts).value;
}

double lambda_0(double gamma, int d) {
  require(d >= 2, "lambda_0: dimension must be >= 2");
  require(std::isfinite(gamma) && gamma > 0.75, "lambda_0: gamma must be > 3/4, got " + fmt(gamma));
  return (d - 1.0) * (gamma - 0.75) / x0_star(gamma).root;
}

double lambda_0_approx(double gamma, int d) {
  require(d >= 2, "lambda_0_approx: dimension must be >= 2");
  require(std::isfinite(gamma) && gamma > 0.75,
          "lambda_0_approx: gamma must be > 3/4, got " + fmt(gamma));
  const double n0 = n0_coeff(gamma);
  const double den =
      2.0 * (gamma - 0.25) * std::pow(n0, 4.0 * gamma / (4.0 * gamma - 1.0)) - 2.0 * (gamma - 0.75);
  return (d - 1.0) * (gamma - 0.75) / den;
}

double wlh_breaking_threshold(double gamma, int d) { return (d - 1.0) * (gamma - 0.25); }

const char* to_string(SymmetryStatus s) {
  switch (s) {
    case SymmetryStatus::Symmetric: return "Symmetric";
    case SymmetryStatus::SymmetryBroken: return "SymmetryBroken";
    case SymmetryStatus::Undetermined: return "Undetermined";
  }
  return "Undetermined";
}

SymmetryVerdict classify_ckn(const CknPoint& pt, const Lambda1Options& opts) {
  require(pt.lambda().has_value(), "classify_ckn: lambda is required");
  const double lambda = *pt.lambda();
  const LambdaStarResult star = lambda_star_detail(pt.theta(), pt.p(), pt.d(), opts);

  SymmetryVerdict v;
  v.symmetric_bound = star.value;
  v.breaking_bound = lambda_fs(pt.theta(), pt.p(), pt.d());
  v.basis = to_string(star.basis);
  v.diagnostic = star.diagnostic;
  const bool sym = lambda <= star.value;
  const bool broken = lambda > v.breaking_bound;
  if (sym && broken) {
    v.status = SymmetryStatus::Undetermined;
    if (!v.diagnostic.empty()) v.diagnostic += "; ";
    v.diagnostic += "symmetry bound exceeds the Felli-Schneider bound; no certificate issued";
  } else if (sym) {
    v.status = SymmetryStatus::Symmetric;
  } else if (broken) {
    v.status = SymmetryStatus::SymmetryBroken;
  } else {
    v.status = SymmetryStatus::Undetermined;
  }
  return v;
}

SymmetryVerdict classify_wlh(const WlhPoint& pt) {
  require(pt.lambda().has_value(), "classify_wlh: lambda is required");
  const double lambda = *pt.lambda();
  const int d = pt.d();
  const double gamma = pt.gamma();

  SymmetryVerdict v;
  v.breaking_bound = wlh_breaking_threshold(gamma, d);
  const bool break_applies = (d == 2 && gamma > 0.5) || (d >= 3 && gamma >= d / 4.0);
  std::vector<std::string> notes;
  if (pt.lambda0_valid()) {
    v.symmetric_bound = lambda_0(gamma, d);
    v.basis = "wlh_lambda0";
  } else {
    v.basis = "wlh_breaking_only";
    notes.push_back(d <= 3 ? "symmetry bound requires gamma > 3/4"
                           : "symmetry bound requires gamma >= d/4");
  }
  if (!break_applies) notes.push_back("breaking bound not established for this (d, gamma)");

  const bool sym = v.symmetric_bound && lambda <= *v.symmetric_bound;
  const bool broken = break_applies && lambda > v.breaking_bound;
  if (sym && broken) {
    v.status = SymmetryStatus::Undetermined;
    notes.push_back("symmetry bound exceeds the breaking bound; no certificate issued");
  } else if (sym) {
    v.status = SymmetryStatus::Symmetric;
  } else if (broken) {
    v.status = SymmetryStatus::SymmetryBroken;
  } else {
    v.status = SymmetryStatus::Undetermined;
  }
  for (std::size_t i = 0; i < notes.size(); ++i) {
    v.diagnostic += (i ? "; " : "") + notes[i];
  }
  return v;
}

PInterval admissible_p_interval(double theta, int d) {
  require(d >= 2, "admissible_p_interval: dimension must be >= 2");
  require(std::isfinite(theta) && theta > 0.0 && theta <= 1.0,
          "empty admissible interval: theta must lie in (0, 1], got " + fmt(theta));
  double hi = p_max(d);
  if (d - 2.0 * theta > 0.0) hi = std::min(hi, 2.0 * d / (d - 2.0 * theta));
  require(hi > 2.0, "empty admissible interval for theta = " + fmt(theta));
  return {2.0, hi};
}

}  // namespace cknsym
