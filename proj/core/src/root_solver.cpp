#include "cknsym/root_solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "cknsym/constants.hpp"
#include "cknsym/errors.hpp"

namespace cknsym {
namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

// Relative offset applied to N^{1/beta} so that the sign precondition
// survives rounding.
constexpr double kLowerOffset = 1e-12;

// Below this N - 1 the sign of f at N^{1/beta} is at rounding level.
constexpr double kDegenerateN = 1e-10;

RootResult degenerate_root(double lower, double residual) {
  RootResult r;
  r.root = lower;
  r.residual = residual;
  r.bracket_lo = lower;
  r.bracket_hi = lower;
  r.degenerate = true;
  return r;
}

}  // namespace

FunctionValue f_eval(double x, double theta, double p, double n) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("f_eval: x must be > 0");
  if (!(p > 2.0 && p < 6.0)) throw DomainError("f_eval: p must lie in (2, 6)");
  if (!(theta > vartheta(p, 3) && theta < 1.0)) {
    throw DomainError("f_eval: theta must lie in (vartheta(p,3), 1), got " + fmt(theta));
  }
  if (!(n > 0.0)) throw DomainError("f_eval: n must be > 0");
  const double beta = beta_exponent(theta, p);
  const double alpha = alpha_exponent(theta, p);
  const double xb = std::pow(x, beta);
  const double gap = xb - n;
  // theta (x^b - n) ((6-p) x - alpha) groups the two x^b - n terms, which
  // nearly cancel as theta -> 1.
  const double value =
      theta * gap * ((6.0 - p) * x - alpha) - alpha * (1.0 - theta) * (x - 1.0) * n;
  const double derivative = (6.0 - p) * theta * ((1.0 + beta) * xb - n) -
                            alpha * (beta * theta * xb / x + (1.0 - theta) * n);
  return {value, derivative};
}

FunctionValue f0_eval(double x, double gamma, double n0) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("f0_eval: x must be > 0");
  if (!(gamma > 0.75)) throw DomainError("f0_eval: gamma must be > 3/4, got " + fmt(gamma));
  if (!(n0 > 0.0)) throw DomainError("f0_eval: n0 must be > 0");
  const double beta0 = 1.0 - 1.0 / (4.0 * gamma);
  const double xb = std::pow(x, beta0);
  const double value =
      4.0 * gamma * xb * x - (8.0 * gamma - 3.0) * n0 * x + (4.0 * gamma - 3.0) * n0;
  const double derivative = 4.0 * gamma * (beta0 + 1.0) * xb - (8.0 * gamma - 3.0) * n0;
  return {value, derivative};
}

RootResult solve_increasing_convex_root(const ScalarFunction& g, double lower,
                                        const SolverOptions& opts) {
  if (!(opts.tol_abs > 0.0) || !(opts.tol_rel > 0.0)) {
    throw DomainError("solve_increasing_convex_root: tolerances must be > 0");
  }
  double lo = lower;
  const double g_lower = g(lo).value;
  if (!(g_lower < 0.0)) {
    throw BracketFailure("g(lower) must be < 0, got " + fmt(g_lower) + " at " + fmt(lower));
  }

  double step = 1e-3 * std::max(std::abs(lower), 1.0);
  double hi = lower + step;
  FunctionValue g_hi = g(hi);
  int doublings = 0;
  while (!(g_hi.value > 0.0)) {
    if (++doublings > opts.max_doublings) {
      throw BracketFailure("no sign change within " + std::to_string(opts.max_doublings) +
                           " doublings from " + fmt(lower));
    }
    lo = hi;
    step *= 2.0;
    hi = lower + step;
    g_hi = g(hi);
  }

  RootResult out;
  double x = hi;
  FunctionValue gx = g_hi;
  for (int it = 1; it <= opts.max_iterations; ++it) {
    out.iterations = it;
    if (std::abs(gx.value) <= opts.tol_abs || hi - lo <= opts.tol_rel * std::abs(x)) {
      out.root = x;
      out.residual = std::abs(gx.value);
      out.bracket_lo = lo;
      out.bracket_hi = hi;
      return out;
    }
    if (gx.value < 0.0) {
      lo = x;
    } else {
      hi = x;
    }
    double next = gx.derivative > 0.0 ? x - gx.value / gx.derivative : lo;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == x) {
      // No representable progress: x is the root to machine precision.
      out.root = x;
      out.residual = std::abs(gx.value);
      out.bracket_lo = lo;
      out.bracket_hi = hi;
      return out;
    }
    x = next;
    gx = g(x);
  }
  throw NoConvergence("no convergence after " + std::to_string(opts.max_iterations) +
                      " iterations; bracket [" + fmt(lo) + ", " + fmt(hi) + "]");
}

RootResult x_star(double theta, double p, double tol_rel) {
  if (!(p > 2.0 && p < 6.0)) throw DomainError("x_star: p must lie in (2, 6)");
  if (!(theta > vartheta(p, 3) && theta < 1.0)) {
    throw DomainError("x_star: theta must lie in (vartheta(p,3), 1), got " + fmt(theta));
  }
  const double n = n_coeff(theta, p);
  const double beta = beta_exponent(theta, p);
  const double start = std::pow(n, 1.0 / beta);
  const double lower = start * (1.0 + kLowerOffset);
  auto f = [&](double x) { return f_eval(x, theta, p, n); };

  const double g_lower = f(lower).value;
  if (!(g_lower < 0.0)) {
    if (n - 1.0 <= kDegenerateN) return degenerate_root(lower, std::abs(g_lower));
    throw BracketFailure("x_star: f(N^{1/beta}) not negative at theta = " + fmt(theta) +
                         ", p = " + fmt(p));
  }
  const double scale = std::max(1.0, std::abs(f(2.0 * start).value));
  return solve_increasing_convex_root(f, lower, SolverOptions{1e-12 * scale, tol_rel});
}

RootResult x0_star(double gamma, double tol_rel) {
  if (!(gamma > 0.75)) throw DomainError("x0_star: gamma must be > 3/4, got " + fmt(gamma));
  const double n0 = n0_coeff(gamma);
  const double beta0 = 1.0 - 1.0 / (4.0 * gamma);
  const double start = std::pow(n0, 1.0 / beta0);
  const double lower = start * (1.0 + kLowerOffset);
  auto f0 = [&](double x) { return f0_eval(x, gamma, n0); };

  const double g_lower = f0(lower).value;
  if (!(g_lower < 0.0)) {
    if (n0 - 1.0 <= kDegenerateN) return degenerate_root(lower, std::abs(g_lower));
    throw BracketFailure("x0_star: f0(N0^{1/beta0}) not negative at gamma = " + fmt(gamma));
  }
  const double scale = std::max(1.0, std::abs(f0(2.0 * start).value));
  return solve_increasing_convex_root(f0, lower, SolverOptions{1e-12 * scale, tol_rel});
}

}  // namespace cknsym
