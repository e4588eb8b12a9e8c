#include "cknsym/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cknsym/errors.hpp"
#include "golden_section.hpp"

namespace cknsym {
namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

constexpr int kOrder = 12;

struct GaussLegendre {
  std::array<double, kOrder> nodes{};
  std::array<double, kOrder> weights{};

  GaussLegendre() {
    // Newton on P_n from the Chebyshev-like initial guesses.
    for (int i = 0; i < kOrder; ++i) {
      double x = std::cos(std::numbers::pi * (i + 0.75) / (kOrder + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= kOrder; ++k) {
          const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = kOrder * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      nodes[i] = x;
      weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
  }
};

const GaussLegendre& rule() {
  static const GaussLegendre gl;
  return gl;
}

double panel(const std::function<double(double)>& fn, double a, double b) {
  const auto& gl = rule();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (int i = 0; i < kOrder; ++i) sum += gl.weights[i] * fn(mid + half * gl.nodes[i]);
  return sum * half;
}

double adapt(const std::function<double(double)>& fn, double a, double b, double whole,
             double tol, int depth, int max_depth) {
  const double mid = 0.5 * (a + b);
  const double left = panel(fn, a, mid);
  const double right = panel(fn, mid, b);
  // Below a few dozen ulps of the panel the difference is rounding noise.
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * (std::abs(left) + std::abs(right));
  if (std::abs(left + right - whole) <= std::max(tol, floor)) return left + right;
  if (depth >= max_depth) {
    throw QuadratureError("panel refinement exceeded depth " + std::to_string(max_depth) +
                          " on [" + fmt(a) + ", " + fmt(b) + "]");
  }
  return adapt(fn, a, mid, left, 0.5 * tol, depth + 1, max_depth) +
         adapt(fn, mid, b, right, 0.5 * tol, depth + 1, max_depth);
}

// ln cosh(x) without overflow.
double log_cosh(double x) {
  const double ax = std::abs(x);
  return ax + std::log1p(std::exp(-2.0 * ax)) - std::numbers::ln2;
}

// Relative-tolerance wrapper: a coarse 16-panel pass fixes the scale.
double integrate_rel(const std::function<double(double)>& fn, double a, double b, double tol_rel,
                     int max_depth) {
  constexpr int kPanels = 16;
  double coarse = 0.0;
  for (int i = 0; i < kPanels; ++i) {
    coarse += panel(fn, a + (b - a) * i / kPanels, a + (b - a) * (i + 1) / kPanels);
  }
  const double tol = tol_rel * std::abs(coarse);
  double total = 0.0;
  for (int i = 0; i < kPanels; ++i) {
    const double lo = a + (b - a) * i / kPanels;
    const double hi = a + (b - a) * (i + 1) / kPanels;
    total += adapt(fn, lo, hi, panel(fn, lo, hi), tol / kPanels, 0, max_depth);
  }
  return total;
}

void require_oracle_domain(double theta, double p, double lambda) {
  if (!(p > 2.0 && p < 6.0)) throw DomainError("k_star_oracle: p must lie in (2, 6)");
  if (!(theta > (p - 2.0) / p && theta <= 1.0)) {
    throw DomainError("k_star_oracle: theta must lie in ((p-2)/p, 1], got " + fmt(theta));
  }
  if (!(std::isfinite(lambda) && lambda > 0.0)) {
    throw DomainError("k_star_oracle: lambda must be > 0");
  }
}

}  // namespace

double SechProfile::value(double s) const {
  const double k = 2.0 / (p - 2.0);
  return amplitude * std::exp(-k * log_cosh(rate * s));
}

double SechProfile::derivative(double s) const {
  const double k = 2.0 / (p - 2.0);
  return -k * rate * std::tanh(rate * s) * value(s);
}

double SechProfile::second_derivative(double s) const {
  const double k = 2.0 / (p - 2.0);
  const double t = std::tanh(rate * s);
  // u'' = k B^2 u (k t^2 - (1 - t^2))
  return k * rate * rate * value(s) * (k * t * t - (1.0 - t * t));
}

SechProfile sech_profile(double p, double mu) {
  if (!(std::isfinite(p) && p > 2.0)) throw DomainError("sech_profile: p must be > 2");
  if (!(std::isfinite(mu) && mu > 0.0)) throw DomainError("sech_profile: mu must be > 0");
  SechProfile prof;
  prof.p = p;
  prof.mu = mu;
  prof.amplitude = std::pow(0.5 * p * mu, 1.0 / (p - 2.0));
  prof.rate = 0.5 * std::sqrt(mu) * (p - 2.0);
  return prof;
}

double integrate_adaptive(const std::function<double(double)>& fn, double a, double b,
                          double tol_abs, int max_depth) {
  return adapt(fn, a, b, panel(fn, a, b), tol_abs, 0, max_depth);
}

ProfileIntegrals profile_integrals(const SechProfile& prof, const QuadratureOptions& opts) {
  const double p = prof.p;
  const double k = 2.0 / (p - 2.0);
  // Integrate in x = B s. u^2 ~ e^{-2 k x}: the slowest tail among the three.
  const double x_end = opts.safety * std::log(1.0 / opts.tail_eps) / k;
  const double a2 = prof.amplitude * prof.amplitude;
  const double b = prof.rate;

  auto sech2k = [k](double x) { return std::exp(-2.0 * k * log_cosh(x)); };
  auto grad = [k](double x) {
    const double t = std::tanh(x);
    return t * t * std::exp(-2.0 * k * log_cosh(x));
  };
  auto power = [k, p](double x) { return std::exp(-p * k * log_cosh(x)); };

  ProfileIntegrals out;
  out.i2 = 2.0 * (a2 / b) * integrate_rel(sech2k, 0.0, x_end, opts.tol_rel, opts.max_depth);
  out.igrad = 2.0 * (a2 * k * k * b) * integrate_rel(grad, 0.0, x_end, opts.tol_rel, opts.max_depth);
  out.ip = 2.0 * (std::pow(prof.amplitude, p) / b) *
           integrate_rel(power, 0.0, x_end, opts.tol_rel, opts.max_depth);
  return out;
}

double rayleigh_quotient(double theta, double lambda, double p, const ProfileIntegrals& ints) {
  return std::exp(theta * std::log(ints.igrad + lambda * ints.i2) +
                  (1.0 - theta) * std::log(ints.i2) - (2.0 / p) * std::log(ints.ip));
}

double rayleigh_quotient(double theta, double lambda, const SechProfile& prof,
                         const QuadratureOptions& opts) {
  if (!(std::isfinite(lambda) && lambda > 0.0)) {
    throw DomainError("rayleigh_quotient: lambda must be > 0");
  }
  return rayleigh_quotient(theta, lambda, prof.p, profile_integrals(prof, opts));
}

OracleResult k_star_oracle_detail(double theta, double p, double lambda,
                                  const QuadratureOptions& opts) {
  require_oracle_domain(theta, p, lambda);
  auto q_of_log_mu = [&](double log_mu) {
    return rayleigh_quotient(theta, lambda, sech_profile(p, std::exp(log_mu)), opts);
  };
  constexpr int kScan = 64;
  const double lo = std::log(lambda) - 6.0;
  const double hi = std::log(lambda) + 6.0;
  std::vector<double> grid(kScan);
  std::vector<double> values(kScan);
  int best = 0;
  for (int i = 0; i < kScan; ++i) {
    grid[i] = lo + (hi - lo) * i / (kScan - 1);
    values[i] = q_of_log_mu(grid[i]);
    if (values[i] < values[best]) best = i;
  }
  if (best == 0 || best == kScan - 1) {
    throw BoundaryMinimumError("k_star_oracle: scan minimum at mu = " + fmt(std::exp(grid[best])) +
                               " lies on the end of the scanned range");
  }
  // Bracket width in log mu equals the relative width in mu.
  const double a = grid[best - 1];
  const double b = grid[best + 1];
  auto [log_mu, value] = detail::golden_minimize(q_of_log_mu, a, b, 0.0, 1e-10);
  if (values[best] < value) return {values[best], std::exp(grid[best])};
  return {value, std::exp(log_mu)};
}

double k_star_oracle(double theta, double p, double lambda, const QuadratureOptions& opts) {
  return k_star_oracle_detail(theta, p, lambda, opts).value;
}

PerturbationReport perturbation_spot_check(double theta, double p, double lambda,
                                           std::uint64_t seed, int trials) {
  const OracleResult best = k_star_oracle_detail(theta, p, lambda);
  const SechProfile prof = sech_profile(p, best.mu_argmin);
  const double k = 2.0 / (p - 2.0);
  const double s_end = 1.5 * std::log(1e15) / (k * prof.rate);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> amp_dist(-0.05, 0.05);
  std::uniform_real_distribution<double> width_dist(0.25, 2.0);

  PerturbationReport report;
  report.minimum = best.value;
  report.smallest_perturbed = std::numeric_limits<double>::infinity();
  report.trials = trials;
  for (int t = 0; t < trials; ++t) {
    const double eps = amp_dist(rng) * prof.amplitude;
    const double w = width_dist(rng) / prof.rate;
    auto u = [&](double s) { return prof.value(s) + eps * std::exp(-(s * s) / (w * w)); };
    auto du = [&](double s) {
      return prof.derivative(s) - eps * 2.0 * s / (w * w) * std::exp(-(s * s) / (w * w));
    };
    const double scale = prof.amplitude * prof.amplitude / prof.rate;
    const double i2 = 2.0 * integrate_adaptive([&](double s) { return u(s) * u(s); }, 0.0, s_end,
                                               1e-15 * scale);
    const double ig = 2.0 * integrate_adaptive([&](double s) { return du(s) * du(s); }, 0.0,
                                               s_end, 1e-15 * scale * prof.rate * prof.rate);
    const double ip = 2.0 * integrate_adaptive(
                                [&](double s) { return std::pow(std::abs(u(s)), p); }, 0.0, s_end,
                                1e-15 * std::pow(prof.amplitude, p) / prof.rate);
    const double q = rayleigh_quotient(theta, lambda, p, ProfileIntegrals{i2, ig, ip});
    report.smallest_perturbed = std::min(report.smallest_perturbed, q);
  }
  report.passed = report.smallest_perturbed >= report.minimum * (1.0 - 1e-12);
  return report;
}

}  // namespace cknsym
