#pragma once

/// \file
/// Boundaries of the symmetry region and the symmetry/symmetry-breaking
/// classifiers for the CKN and WLH inequalities.

#include <optional>
#include <string>

#include "cknsym/constants.hpp"

namespace cknsym {

struct Lambda1Options {
  int grid_points = 512;
  /// Relative margin eps: the scan covers [q* + eps w, q_max - eps w], w = q_max - q*.
  double margin = 1e-4;
  /// Golden-section stopping width, relative to q.
  double q_tol_rel = 1e-10;
};

/// Inner objective of Lambda_1 at a given q:
/// min{Lambda_*(1,q,d), theta Lambda_*(1,p,d) / ((1-theta) Pi*(theta,p,q) + theta)}.
double lambda_1_objective(double q, double theta, double p, int d);

struct Lambda1Result {
  double value;
  double q_argmax;
};

/// max over q in (q*, q_max) of lambda_1_objective, q_max = 6 (d = 2) or 2d/(d-2).
/// Requires vartheta(p,d) < theta < 1 strictly.
Lambda1Result lambda_1_detail(double theta, double p, int d, const Lambda1Options& opts = {});
double lambda_1(double theta, double p, int d, const Lambda1Options& opts = {});

/// (d-1) alpha / (4 (p-2) x*(theta,p)). Requires 2 < p < 6 and
/// vartheta(p,3) < theta < 1 for d in {2,3}, vartheta(p,d) <= theta < 1 for d >= 4.
double lambda_2(double theta, double p, int d);

/// Explicit lower estimate of lambda_2 obtained from one Newton step of f at N^{1/beta}.
double lambda_2_approx(double theta, double p, int d);

enum class SymmetryCase {
  ThetaOne,          ///< theta = 1: Lambda_*(1,p,d)
  DimTwoLambda1,     ///< d = 2, vartheta(p,2) < theta <= vartheta(p,3): Lambda_1
  DimTwoLambdaStar,  ///< d = 2, vartheta(p,3) < theta < 1: max(Lambda_1, Lambda_2)
  CriticalLambda2,   ///< d >= 4, theta = vartheta(p,d): Lambda_2
  SubcriticalLambdaStar,  ///< d >= 3, vartheta(p,d) < theta < 1: max(Lambda_1, Lambda_2)
};

const char* to_string(SymmetryCase c);

struct LambdaStarResult {
  double value;
  SymmetryCase basis;
  std::optional<double> lambda1;
  std::optional<double> lambda2;
  /// Set when a member that the case calls for is undefined at this point.
  std::string diagnostic;
};

/// Lambda_*(theta,p,d) with the members that apply to the parameter case.
/// Lambda_1 is left out (with a diagnostic) when q* >= q_max leaves it no window.
/// d = 3, theta = vartheta(p,3) throws DegenerateError (alpha = 0, Lambda_2 = 0).
LambdaStarResult lambda_star_detail(double theta, double p, int d,
                                    const Lambda1Options& opts = {});
double lambda_star(double theta, double p, int d, const Lambda1Options& opts = {});

/// (d-1)(gamma - 3/4) / x0*(gamma); gamma > 3/4, d >= 2.
double lambda_0(double gamma, int d);

/// (d-1)(gamma-3/4) / (2 (gamma-1/4) N0^{4gamma/(4gamma-1)} - 2 (gamma-3/4)).
double lambda_0_approx(double gamma, int d);

/// (d-1)(gamma - 1/4): above it the WLH optimizers are not symmetric.
double wlh_breaking_threshold(double gamma, int d);

enum class SymmetryStatus { Symmetric, SymmetryBroken, Undetermined };

const char* to_string(SymmetryStatus s);

struct SymmetryVerdict {
  SymmetryStatus status = SymmetryStatus::Undetermined;
  std::optional<double> symmetric_bound;
  double breaking_bound = 0.0;
  std::string basis;
  std::string diagnostic;
};

/// Symmetric if lambda <= Lambda_* (per case), SymmetryBroken if lambda > Lambda_FS.
/// The point must carry lambda.
SymmetryVerdict classify_ckn(const CknPoint& pt, const Lambda1Options& opts = {});

/// Symmetric if lambda <= Lambda_0 (where that claim applies), SymmetryBroken if
/// lambda > (d-1)(gamma-1/4) (where that claim applies), Undetermined otherwise.
SymmetryVerdict classify_wlh(const WlhPoint& pt);

struct PInterval {
  double lo;
  double hi;
};

/// Open p-interval on which theta >= vartheta(p,d) and p < p_max(d):
/// (2, min(p_max(d), 2d/(d - 2 theta))). Throws DomainError when empty.
PInterval admissible_p_interval(double theta, int d);

}  // namespace cknsym
