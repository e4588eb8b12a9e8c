#include <doctest.h>

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "cknsym/errors.hpp"
#include "cknsym/special_functions.hpp"
#include "test_support.hpp"

using namespace cknsym;

namespace {

// ln Gamma and psi at 50 digits (mpmath, tests/oracle/frozen_values.py).
struct Frozen {
  double z;
  double value;
};

constexpr Frozen kLogGamma[] = {
    {0.25, 1.2880225246980774574},  {0.5, 0.57236494292470008707}, {1.5, -0.12078223763524522235},
    {3.7, 1.4280723266653879219},   {7.9, 8.3242658680088089235},  {8.1, 8.7273882634320405198},
    {25.5, 56.389167643719946744},  {100.0, 359.13420536957539878}, {200.0, 857.93366982585743682},
};

constexpr Frozen kDigamma[] = {
    {0.25, -4.2274535333762654081}, {0.5, -1.9635100260214234794}, {1.0, -0.57721566490153286061},
    {2.0, 0.42278433509846713939},  {3.7, 1.1671535393615113859},  {7.9, 2.0022384875635709878},
    {8.1, 2.0288674570805814803},   {25.5, 3.2189424728839197665}, {100.0, 4.6001618527380874002},
    {200.0, 5.2958152832199116155},
};

double grid_point(int k, int n, double lo, double hi) {
  return lo * std::pow(hi / lo, static_cast<double>(k) / (n - 1));
}

// 1e-13 absolute on ln(Gamma), widened to one ulp of the value: near z = 200
// the result is ~857 and a correctly rounded double is already 1.1e-13 off.
double lgamma_tol(double value) {
  return std::max(1e-13, std::abs(std::nextafter(value, 2.0 * value) - value));
}

}  // namespace

TEST_CASE("log_gamma: closed-form values") {
  CHECK(std::abs(log_gamma(1.0)) <= 1e-14);
  CHECK(std::abs(log_gamma(2.0)) <= 1e-14);
  CHECK(log_gamma(0.5) == doctest::Approx(std::log(std::sqrt(std::numbers::pi))).epsilon(1e-15));
  CHECK(log_gamma(5.0) == doctest::Approx(std::log(24.0)).epsilon(1e-15));
}

TEST_CASE("log_gamma: 50-digit reference values, exp(result) relative error <= 1e-13") {
  for (const auto& f : kLogGamma) {
    CAPTURE(f.z);
    CHECK(std::abs(log_gamma(f.z) - f.value) <= lgamma_tol(f.value));
  }
}

TEST_CASE("log_gamma: agrees with Boost.Math long double on [0.25, 200]") {
  for (int k = 0; k < 512; ++k) {
    const double z = grid_point(k, 512, 0.25, 200.0);
    const long double ref = boost::math::lgamma(static_cast<long double>(z));
    CAPTURE(z);
    CHECK(std::abs(log_gamma(z) - static_cast<double>(ref)) <= lgamma_tol(static_cast<double>(ref)));
  }
}

TEST_CASE("log_gamma: domain errors") {
  CHECK_THROWS_AS(log_gamma(0.0), DomainError);
  CHECK_THROWS_AS(log_gamma(-1.5), DomainError);
  CHECK_THROWS_AS(log_gamma(std::numeric_limits<double>::quiet_NaN()), DomainError);
  CHECK_THROWS_AS(log_gamma(std::numeric_limits<double>::infinity()), DomainError);
}

TEST_CASE("gamma_ratio") {
  CHECK(gamma_ratio(3.7, 3.7) == 1.0);
  CHECK(gamma_ratio(5.0, 4.0) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(gamma_ratio(1.0, 1.5) == doctest::Approx(2.0 / std::sqrt(std::numbers::pi)).epsilon(1e-14));
  // Large arguments: Gamma(171.5) overflows but the ratio does not.
  const double expected = std::exp(static_cast<double>(boost::math::lgamma(171.5L) - boost::math::lgamma(171.0L)));
  CHECK(gamma_ratio(171.5, 171.0) == doctest::Approx(expected).epsilon(1e-12));
  CHECK_THROWS_AS(gamma_ratio(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(gamma_ratio(1.0, -2.0), DomainError);
}

TEST_CASE("gamma_ratio(a, a) is 1 within one ulp on a 256-point grid") {
  for (int k = 0; k < 256; ++k) {
    const double a = grid_point(k, 256, 0.25, 100.0);
    CHECK(std::abs(gamma_ratio(a, a) - 1.0) <= std::numeric_limits<double>::epsilon());
  }
}

TEST_CASE("digamma: known values") {
  CHECK(digamma(1.0) == doctest::Approx(-0.57721566490153286).epsilon(1e-15));
  CHECK(digamma(2.0) == doctest::Approx(0.42278433509846714).epsilon(1e-15));
  const double diff = digamma(1.5) - digamma(1.0);
  CHECK(diff == doctest::Approx(0.6137056388801094).epsilon(1e-14));
  CHECK(diff > 0.5);
  CHECK(diff < std::log(1.5) + 1.0 - 2.0 / 3.0);
}

TEST_CASE("digamma: 50-digit references and Boost.Math agree to 1e-12 absolute") {
  for (const auto& f : kDigamma) {
    CAPTURE(f.z);
    CHECK(std::abs(digamma(f.z) - f.value) <= 1e-12);
  }
  for (int k = 0; k < 512; ++k) {
    const double z = grid_point(k, 512, 0.25, 200.0);
    const long double ref = boost::math::digamma(static_cast<long double>(z));
    CAPTURE(z);
    CHECK(std::abs(digamma(z) - static_cast<double>(ref)) <= 1e-12);
  }
}

TEST_CASE("digamma: domain errors") {
  CHECK_THROWS_AS(digamma(0.0), DomainError);
  CHECK_THROWS_AS(digamma(-0.5), DomainError);
}

TEST_CASE("recurrences on 256 log-spaced points in [0.25, 100]") {
  for (int k = 0; k < 256; ++k) {
    const double z = grid_point(k, 256, 0.25, 100.0);
    CAPTURE(z);
    CHECK(std::abs(digamma(z + 1.0) - digamma(z) - 1.0 / z) <= 1e-12);
    CHECK(std::abs(log_gamma(z + 1.0) - log_gamma(z) - std::log(z)) <= 1e-12);
  }
}

TEST_CASE("digamma half-step bounds hold strictly") {
  // 1/(2z) < psi(z + 1/2) - psi(z) < ln(1 + 1/(2z)) + 1/z - 2/(2z + 1)
  for (int k = 0; k < 256; ++k) {
    const double z = grid_point(k, 256, 0.25, 100.0);
    const double diff = digamma(z + 0.5) - digamma(z);
    CAPTURE(z);
    CHECK(diff > 1.0 / (2.0 * z));
    CHECK(diff < std::log1p(1.0 / (2.0 * z)) + 1.0 / z - 2.0 / (2.0 * z + 1.0));
  }
}
