#pragma once

/// \file
/// The convex transcendental functions f (CKN, theta < 1) and f0 (WLH) whose
/// roots on (N^{1/beta}, inf) determine Lambda_2 and Lambda_0, and a
/// safeguarded Newton solver for increasing convex functions.

#include <functional>

namespace cknsym {

struct FunctionValue {
  double value;
  double derivative;
};

/// f(x) = theta (6-p)(x^beta - n) x - alpha (theta (x^beta - n) + (1-theta)(x-1) n)
/// with beta = beta(theta,p), alpha = 2 p theta - 3 (p-2).
/// Requires x > 0, 2 < p < 6, vartheta(p,3) < theta < 1, n > 0.
FunctionValue f_eval(double x, double theta, double p, double n);

/// f0(x) = 4 gamma x^(beta0+1) - (8 gamma - 3) n0 x + (4 gamma - 3) n0,
/// beta0 = 1 - 1/(4 gamma). Requires x > 0, gamma > 3/4, n0 > 0.
FunctionValue f0_eval(double x, double gamma, double n0);

struct RootResult {
  double root = 0.0;
  double residual = 0.0;  ///< |g(root)|
  int iterations = 0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  /// Set when g(lower) could not be resolved as negative because N - 1 is at
  /// rounding level; root then holds the lower end of the interval.
  bool degenerate = false;
};

struct SolverOptions {
  double tol_abs = 1e-12;
  double tol_rel = 1e-12;
  int max_doublings = 200;
  int max_iterations = 200;
};

using ScalarFunction = std::function<FunctionValue(double)>;

/// Root of g on (lower, inf) for g increasing and convex there with g(lower) < 0.
///
/// The upper bracket is found by doubling a step from `lower`; Newton then runs
/// from the upper end (monotone from the right on an increasing convex g) and
/// falls back to bisection whenever an iterate leaves the bracket. Stops when
/// |g| <= tol_abs or the bracket width is <= tol_rel * root.
///
/// Throws BracketFailure if g(lower) >= 0 or no sign change appears within
/// max_doublings, NoConvergence after max_iterations.
RootResult solve_increasing_convex_root(const ScalarFunction& g, double lower,
                                        const SolverOptions& opts);

/// x*(theta, p): root of f with n = n_coeff(theta, p).
RootResult x_star(double theta, double p, double tol_rel = 1e-12);

/// x0*(gamma): root of f0 with n0 = n0_coeff(gamma).
RootResult x0_star(double gamma, double tol_rel = 1e-12);

}  // namespace cknsym
