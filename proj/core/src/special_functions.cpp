#include "cknsym/special_functions.hpp"

#include <array>
#include <cmath>
#include <string>

#include "cknsym/errors.hpp"

namespace cknsym {
namespace {

constexpr double kAsymptoticStart = 8.0;

// B_{2k} / (2k (2k-1)), k = 1..8
constexpr std::array<double, 8> kStirling = {
    1.0 / 12.0,       -1.0 / 360.0,  1.0 / 1260.0,  -1.0 / 1680.0,
    1.0 / 1188.0,     -691.0 / 360360.0, 1.0 / 156.0, -3617.0 / 122400.0};

// B_{2k} / (2k), k = 1..8
constexpr std::array<double, 8> kDigamma = {
    1.0 / 12.0,   -1.0 / 120.0, 1.0 / 252.0,  -1.0 / 240.0,
    1.0 / 132.0,  -691.0 / 32760.0, 1.0 / 12.0, -3617.0 / 8160.0};

void require_positive(double z, const char* fn) {
  if (!std::isfinite(z) || z <= 0.0) {
    throw DomainError(std::string(fn) + ": argument must be finite and > 0, got " +
                      std::to_string(z));
  }
}

// Horner in w = 1/z^2 over the coefficient table, highest order innermost.
template <std::size_t N>
double series(const std::array<double, N>& c, double w) {
  double acc = 0.0;
  for (std::size_t i = N; i-- > 0;) acc = acc * w + c[i];
  return acc;
}

}  // namespace

double log_gamma(double z) {
  require_positive(z, "log_gamma");
  double shift = 0.0;
  double product = 1.0;
  while (z < kAsymptoticStart) {
    product *= z;
    z += 1.0;
  }
  if (product != 1.0) shift = std::log(product);

  const double inv = 1.0 / z;
  // (z - 1/2)(ln z - 1) - 1/2 keeps the two large terms from cancelling late.
  const double log_z = std::log(z);
  const double a = z - 0.5;
  const double b = log_z - 1.0;
  const double main = a * b;
  const double main_err = std::fma(a, b, -main);
  const double half_log_two_pi = 0.91893853320467274178;
  const double tail = inv * series(kStirling, inv * inv);
  return main + ((half_log_two_pi - 0.5 + tail + main_err) - shift);
}

double gamma_ratio(double a, double b) {
  require_positive(a, "gamma_ratio");
  require_positive(b, "gamma_ratio");
  if (a == b) return 1.0;
  return std::exp(log_gamma(a) - log_gamma(b));
}

double digamma(double z) {
  require_positive(z, "digamma");
  double shift = 0.0;
  while (z < kAsymptoticStart) {
    shift += 1.0 / z;
    z += 1.0;
  }
  const double inv = 1.0 / z;
  const double w = inv * inv;
  return std::log(z) - 0.5 * inv - w * series(kDigamma, w) - shift;
}

}  // namespace cknsym
