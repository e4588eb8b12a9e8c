#pragma once

/// \file
/// Closed-form quantities of the CKN and weighted log-Hardy (WLH) problems on
/// the cylinder R x S^{d-1}: admissibility, derived exponents, the symmetric
/// constants K*, the Felli-Schneider curve, Pi*, N(theta, p), N0(gamma) and the
/// frak-C bracket for K_CKN.
///
/// Every product of powers and Gamma values is assembled in log space and
/// exponentiated once, so the p -> 2+ and gamma -> 3/4+ regimes stay finite.

#include <optional>

namespace cknsym {

/// Tolerance under which theta is treated as equal to vartheta(p, d).
inline constexpr double kCriticalThetaTol = 1e-12;

/// vartheta(p, d) = d (p - 2) / (2 p).
double vartheta(double p, int d);

/// a_c = (d - 2) / 2.
double critical_a(int d);

/// Largest admissible exponent: 6 for d = 2, 2d/(d-2) for d >= 3.
double p_max(int d);

/// Validated CKN parameter tuple. Obtain one through validate_ckn().
class CknPoint {
 public:
  int d() const noexcept { return d_; }
  double p() const noexcept { return p_; }
  double theta() const noexcept { return theta_; }
  const std::optional<double>& lambda() const noexcept { return lambda_; }
  double vartheta() const noexcept { return vartheta_; }
  double p_max() const noexcept { return p_max_; }
  /// theta == vartheta(p, d) (after snapping values within kCriticalThetaTol).
  bool critical() const noexcept { return theta_ == vartheta_; }

 private:
  friend CknPoint validate_ckn(int, double, double, std::optional<double>);
  CknPoint() = default;

  int d_ = 0;
  double p_ = 0.0;
  double theta_ = 0.0;
  std::optional<double> lambda_;
  double vartheta_ = 0.0;
  double p_max_ = 0.0;
};

/// Checks d >= 2, 2 < p < p_max(d), vartheta(p,d) <= theta <= 1 and lambda > 0.
/// A theta within kCriticalThetaTol of vartheta is snapped onto it.
/// Throws DomainError naming the violated constraint.
CknPoint validate_ckn(int d, double p, double theta, std::optional<double> lambda = std::nullopt);

/// Validated WLH parameter tuple. Obtain one through validate_wlh().
class WlhPoint {
 public:
  int d() const noexcept { return d_; }
  double gamma() const noexcept { return gamma_; }
  const std::optional<double>& lambda() const noexcept { return lambda_; }
  /// gamma > 3/4 for d in {2,3}, gamma >= d/4 for d >= 4.
  bool lambda0_valid() const noexcept { return lambda0_valid_; }

 private:
  friend WlhPoint validate_wlh(int, double, std::optional<double>);
  WlhPoint() = default;

  int d_ = 0;
  double gamma_ = 0.0;
  std::optional<double> lambda_;
  bool lambda0_valid_ = false;
};

/// Checks d >= 2, gamma >= d/4 (gamma > 1/2 when d = 2) and lambda > 0.
WlhPoint validate_wlh(int d, double gamma, std::optional<double> lambda = std::nullopt);

struct DerivedExponents {
  double vartheta;
  double a_c;
  double q_star;  ///< 2 p theta / (2 - p (1 - theta))
  double beta;    ///< 1 - (p - 2) / (2 p theta)
  double alpha;   ///< 2 p theta - 3 (p - 2)
};

/// Requires theta > (p - 2)/p; throws DegenerateError otherwise.
DerivedExponents derived_exponents(const CknPoint& pt);

double q_star(double theta, double p);
double beta_exponent(double theta, double p);
double alpha_exponent(double theta, double p);

/// Hoelder exponent delta = (2/p)(q - p)/(q - 2), so that |u|_p <= |u|_2^delta |u|_q^(1-delta).
double hoelder_delta(double p, double q);

/// Felli-Schneider curve 4 (d-1)/(p^2-4) ((2 theta - 1) p + 2)/(p + 2).
double lambda_fs(double theta, double p, int d);

/// Lambda_*(1, p, d) = (d-1)(6-p) / (4 (p-2)), for 2 < p < 6.
double lambda_star_theta1(double p, int d);

/// ln K*_CKN(theta, p, lambda). Requires 2 < p < 6, (p-2)/p < theta <= 1, lambda > 0.
double log_k_star_ckn(double theta, double p, double lambda);

/// Symmetric (s-only) optimal constant of the CKN inequality on the cylinder.
double k_star_ckn(double theta, double p, double lambda);

/// Symmetric optimal constant of the WLH inequality. gamma within 1e-14 of 1/4
/// uses the lambda-free gamma = 1/4 formula.
double k_star_wlh(double gamma, double lambda, int d);

/// ln Pi*(theta, p, q); may exceed the double range of exp() near q -> q*.
double log_pi_star(double theta, double p, double q);

/// Pi*(theta, p, q). Requires q*(theta,p) < q < 6. Throws DegenerateError when the
/// exponent denominator theta - q(p-2)/(p(q-2)) is below 1e-12.
double pi_star(double theta, double p, double q);

/// N(theta, p) from its explicit Gamma-function expression.
double n_coeff(double theta, double p);

/// N(theta, p) from its definition K*(theta,p,1)^(1/theta) / K*(1, q*, 1).
double n_coeff_from_constants(double theta, double p);

/// N0(gamma) = lim_{p->2+} N(gamma (p-2), p), closed form; gamma > 3/4.
double n0_coeff(double gamma);

/// Exponent q = 2 (p-2) / ((2 theta - 1) p + 2) internal to frak_c.
double frak_c_exponent(double theta, double p);

/// Constant frak-C(theta, p) of the two-sided K_CKN bracket.
double frak_c(double theta, double p);

/// Largest lambda for which the K_CKN bracket is claimed:
/// (d-1)/frak_c * ((2 theta - 3) p + 6) / (4 (p - 2)).
double k_interval_lambda_max(double theta, double p, int d);

struct KBracket {
  double lower;
  double upper;
};

/// [frak_c^(-2 theta/(q+2)) K*, K*] for d >= 3, p in (2, 2d/(d-2)), theta in
/// [vartheta, 1) and a_c^2 < lambda <= k_interval_lambda_max. Throws
/// ApplicabilityError when the lambda condition fails.
KBracket k_interval(double theta, double p, double lambda, int d);

}  // namespace cknsym
