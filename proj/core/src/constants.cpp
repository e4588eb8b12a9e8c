#include "cknsym/constants.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "cknsym/errors.hpp"
#include "cknsym/special_functions.hpp"

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

void require_finite(double x, const char* name) {
  require(std::isfinite(x), std::string(name) + " must be finite");
}

void require_ckn_exponent(double theta, double p, const char* fn) {
  require_finite(theta, "theta");
  require_finite(p, "p");
  require(p > 2.0 && p < 6.0, std::string(fn) + ": p must lie in (2, 6), got " + fmt(p));
  require(theta > (p - 2.0) / p && theta <= 1.0,
          std::string(fn) + ": theta must lie in ((p-2)/p, 1], got " + fmt(theta));
}

// ln K*_CKN without range checks; valid for any p > 2 and theta > (p-2)/(2p).
double log_k_star_raw(double theta, double p, double lambda) {
  const double pm2 = p - 2.0;
  const double two_p_theta = 2.0 * p * theta;
  const double k = 2.0 / pm2;
  const double gamma_part =
      0.5 * std::log(std::numbers::pi) + log_gamma(k) - log_gamma(k + 0.5);
  double out = (pm2 / (2.0 * p)) * std::log((two_p_theta + 2.0 - p) / (pm2 * pm2));
  out += theta * std::log(two_p_theta / (two_p_theta + 2.0 - p));
  out += ((6.0 - p) / (2.0 * p)) * std::log((p + 2.0) / 4.0);
  out += (pm2 / p) * gamma_part;
  out += (theta - pm2 / (2.0 * p)) * std::log(lambda);
  return out;
}

}  // namespace

double vartheta(double p, int d) { return d * (p - 2.0) / (2.0 * p); }

double critical_a(int d) { return (d - 2.0) / 2.0; }

double p_max(int d) {
  require(d >= 2, "dimension must be >= 2, got " + std::to_string(d));
  return d == 2 ? 6.0 : 2.0 * d / (d - 2.0);
}

CknPoint validate_ckn(int d, double p, double theta, std::optional<double> lambda) {
  require(d >= 2, "dimension must be >= 2, got " + std::to_string(d));
  require_finite(p, "p");
  require_finite(theta, "theta");
  const double pmax = p_max(d);
  require(p > 2.0 && p < pmax,
          "p must lie in (2, p_max(d)) = (2, " + fmt(pmax) + "), got " + fmt(p));
  const double vt = vartheta(p, d);
  if (std::abs(theta - vt) <= kCriticalThetaTol) theta = vt;
  require(theta >= vt, "theta >= vartheta(p,d) violated: theta = " + fmt(theta) +
                           ", vartheta = " + fmt(vt));
  require(theta <= 1.0, "theta <= 1 violated: theta = " + fmt(theta));
  if (lambda) {
    require(std::isfinite(*lambda) && *lambda > 0.0,
            "lambda > 0 violated: lambda = " + fmt(*lambda));
  }
  CknPoint pt;
  pt.d_ = d;
  pt.p_ = p;
  pt.theta_ = theta;
  pt.lambda_ = lambda;
  pt.vartheta_ = vt;
  pt.p_max_ = pmax;
  return pt;
}

WlhPoint validate_wlh(int d, double gamma, std::optional<double> lambda) {
  require(d >= 2, "dimension must be >= 2, got " + std::to_string(d));
  require_finite(gamma, "gamma");
  require(gamma >= d / 4.0, "gamma >= d/4 violated: gamma = " + fmt(gamma));
  if (d == 2) require(gamma > 0.5, "gamma > 1/2 violated for d = 2: gamma = " + fmt(gamma));
  if (lambda) {
    require(std::isfinite(*lambda) && *lambda > 0.0,
            "lambda > 0 violated: lambda = " + fmt(*lambda));
  }
  WlhPoint pt;
  pt.d_ = d;
  pt.gamma_ = gamma;
  pt.lambda_ = lambda;
  pt.lambda0_valid_ = d <= 3 ? gamma > 0.75 : gamma >= d / 4.0;
  return pt;
}

double q_star(double theta, double p) {
  const double den = 2.0 - p * (1.0 - theta);
  if (!(den > 0.0)) {
    throw DegenerateError("2 - p(1 - theta) must be > 0 (theta > (p-2)/p), got " + fmt(den));
  }
  return 2.0 * p * theta / den;
}

double beta_exponent(double theta, double p) { return 1.0 - (p - 2.0) / (2.0 * p * theta); }

double alpha_exponent(double theta, double p) { return 2.0 * p * theta - 3.0 * (p - 2.0); }

double hoelder_delta(double p, double q) { return (2.0 / p) * (q - p) / (q - 2.0); }

DerivedExponents derived_exponents(const CknPoint& pt) {
  const double p = pt.p();
  const double theta = pt.theta();
  return DerivedExponents{pt.vartheta(), critical_a(pt.d()), q_star(theta, p),
                          beta_exponent(theta, p), alpha_exponent(theta, p)};
}

double lambda_fs(double theta, double p, int d) {
  require(d >= 2, "lambda_fs: dimension must be >= 2");
  require_finite(p, "p");
  require_finite(theta, "theta");
  require(p > 2.0, "lambda_fs: p must be > 2, got " + fmt(p));
  require(theta >= vartheta(p, d) - kCriticalThetaTol && theta <= 1.0,
          "lambda_fs: theta must lie in [vartheta(p,d), 1], got " + fmt(theta));
  return 4.0 * (d - 1.0) / (p * p - 4.0) * ((2.0 * theta - 1.0) * p + 2.0) / (p + 2.0);
}

double lambda_star_theta1(double p, int d) {
  require(d >= 2, "lambda_star_theta1: dimension must be >= 2");
  require_finite(p, "p");
  require(p > 2.0 && p < 6.0, "lambda_star_theta1: p must lie in (2, 6), got " + fmt(p));
  return 0.25 * (d - 1.0) * (6.0 - p) / (p - 2.0);
}

double log_k_star_ckn(double theta, double p, double lambda) {
  require_ckn_exponent(theta, p, "k_star_ckn");
  require(std::isfinite(lambda) && lambda > 0.0, "k_star_ckn: lambda must be > 0");
  return log_k_star_raw(theta, p, lambda);
}

double k_star_ckn(double theta, double p, double lambda) {
  return std::exp(log_k_star_ckn(theta, p, lambda));
}

double k_star_wlh(double gamma, double lambda, int d) {
  require_finite(gamma, "gamma");
  require(d >= 1, "k_star_wlh: dimension must be >= 1");
  require(gamma >= 0.25 - 1e-14, "k_star_wlh: gamma must be >= 1/4, got " + fmt(gamma));
  require(std::isfinite(lambda) && lambda > 0.0, "k_star_wlh: lambda must be > 0");
  const double log_pi = std::log(std::numbers::pi);
  const double lg_half_d = log_gamma(0.5 * d);
  if (std::abs(gamma - 0.25) <= 1e-14) {
    return std::exp(std::log(2.0) + (d + 1.0) * log_pi + 1.0 - 2.0 * lg_half_d);
  }
  const double four_g = 4.0 * gamma;
  double out = std::log(gamma);
  out += (std::log(8.0) + (d + 1.0) * log_pi + 1.0) / four_g;
  out -= lg_half_d / (2.0 * gamma);
  out += ((four_g - 1.0) / four_g) * std::log(4.0 * lambda / (four_g - 1.0));
  return std::exp(out);
}

double log_pi_star(double theta, double p, double q) {
  require_ckn_exponent(theta, p, "pi_star");
  require_finite(q, "q");
  require(q > 2.0 && q < 6.0, "pi_star: q must lie in (2, 6), got " + fmt(q));
  const double e = q * (p - 2.0) / (p * (q - 2.0));
  const double den = theta - e;
  require(den > 0.0, "pi_star: q must exceed q*(theta,p) = " + fmt(q_star(theta, p)));
  if (den <= 1e-12) {
    throw DegenerateError("pi_star: exponent denominator theta - q(p-2)/(p(q-2)) = " +
                          fmt(den) + " is below 1e-12");
  }
  return (log_k_star_raw(theta, p, 1.0) - e * log_k_star_raw(1.0, q, 1.0)) / den;
}

double pi_star(double theta, double p, double q) {
  return std::exp(log_pi_star(theta, p, q));
}

double n_coeff(double theta, double p) {
  require_ckn_exponent(theta, p, "n_coeff");
  const double pm2 = p - 2.0;
  const double p_theta = p * theta;
  const double s = 2.0 - p * (1.0 - theta);  // > 0 on the domain
  const double shifted = (2.0 * theta - 1.0) * p + 2.0;
  const double k = 2.0 / pm2;
  const double r = s / pm2;
  double out = (pm2 / (2.0 * p_theta)) * std::log(2.0 / s);
  out += ((6.0 - p) / (2.0 * p_theta)) * std::log((p + 2.0) / 4.0);
  out += (alpha_exponent(theta, p) / (2.0 * p_theta)) * std::log(2.0 * s / shifted);
  out += (pm2 / p_theta) *
         ((log_gamma(k) - log_gamma(k + 0.5)) + (log_gamma(r + 0.5) - log_gamma(r)));
  return std::exp(out);
}

double n_coeff_from_constants(double theta, double p) {
  require_ckn_exponent(theta, p, "n_coeff_from_constants");
  const double qs = q_star(theta, p);
  return std::exp(log_k_star_raw(theta, p, 1.0) / theta - log_k_star_raw(1.0, qs, 1.0));
}

double n0_coeff(double gamma) {
  require_finite(gamma, "gamma");
  require(gamma > 0.75, "n0_coeff: gamma must be > 3/4, got " + fmt(gamma));
  const double c = 1.0 - 3.0 / (4.0 * gamma);
  double out = c * std::log(2.0) + 1.0 / (4.0 * gamma);
  out += (1.0 - 1.0 / gamma) * std::log(2.0 * gamma - 1.0);
  out -= c * std::log(4.0 * gamma - 1.0);
  out += (log_gamma(2.0 * gamma - 0.5) - log_gamma(2.0 * gamma - 1.0)) / (2.0 * gamma);
  return std::exp(out);
}

double frak_c_exponent(double theta, double p) {
  return 2.0 * (p - 2.0) / ((2.0 * theta - 1.0) * p + 2.0);
}

double frak_c(double theta, double p) {
  require_finite(theta, "theta");
  require_finite(p, "p");
  require(p > 2.0, "frak_c: p must be > 2, got " + fmt(p));
  const double shifted = (2.0 * theta - 1.0) * p + 2.0;
  const double base = 2.0 - 0.5 * p * (1.0 - theta);
  require(theta <= 1.0 && shifted > 0.0 && base > 0.0,
          "frak_c: theta out of range, got " + fmt(theta));
  const double q = frak_c_exponent(theta, p);
  const double pm2 = p - 2.0;
  double out = ((p + 2.0) / shifted) * std::log(p + 2.0) - std::log(shifted);
  out += (1.0 - 0.5 * q) * std::log(base);
  out += 2.0 * q * (log_gamma(p / pm2) - log_gamma(theta * p / pm2));
  out += q * (log_gamma(2.0 * theta * p / pm2) - log_gamma(2.0 * p / pm2));
  return std::exp(out);
}

double k_interval_lambda_max(double theta, double p, int d) {
  return (d - 1.0) / frak_c(theta, p) * ((2.0 * theta - 3.0) * p + 6.0) / (4.0 * (p - 2.0));
}

KBracket k_interval(double theta, double p, double lambda, int d) {
  require(d >= 3, "k_interval: requires d >= 3");
  require_finite(p, "p");
  require_finite(theta, "theta");
  require_finite(lambda, "lambda");
  require(p > 2.0 && p < p_max(d), "k_interval: p must lie in (2, 2d/(d-2))");
  require(theta >= vartheta(p, d) - kCriticalThetaTol && theta < 1.0,
          "k_interval: theta must lie in [vartheta(p,d), 1)");
  const double ac = critical_a(d);
  const double upper_lambda = k_interval_lambda_max(theta, p, d);
  if (!(lambda > ac * ac && lambda <= upper_lambda)) {
    throw ApplicabilityError("k_interval: bracket claimed only for a_c^2 = " + fmt(ac * ac) +
                             " < lambda <= " + fmt(upper_lambda) + ", got " + fmt(lambda));
  }
  const double q = frak_c_exponent(theta, p);
  const double log_upper = log_k_star_ckn(theta, p, lambda);
  const double log_lower = log_upper - (2.0 * theta / (q + 2.0)) * std::log(frak_c(theta, p));
  return KBracket{std::exp(log_lower), std::exp(log_upper)};
}

}  // namespace cknsym
