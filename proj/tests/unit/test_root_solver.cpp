#include <doctest.h>

#include <cmath>
#include <cstring>

#include "cknsym/constants.hpp"
#include "cknsym/errors.hpp"
#include "cknsym/root_solver.hpp"
#include "test_support.hpp"

using namespace cknsym;
using cknsym_test::bisect;
using cknsym_test::rel_err;

TEST_CASE("f_eval identities") {
  for (double theta : {0.8, 0.95}) {
    const double p = 3.0;
    CHECK(std::abs(f_eval(1.0, theta, p, 1.0).value) <= 1e-15);

    const double n = 1.05;
    const double beta = beta_exponent(theta, p);
    const double alpha = alpha_exponent(theta, p);
    const double x0 = std::pow(n, 1.0 / beta);
    const FunctionValue v = f_eval(x0, theta, p, n);
    CHECK(v.value == doctest::Approx(-(1.0 - theta) * alpha * n * (x0 - 1.0)).epsilon(1e-10));
    CHECK(v.value < 0.0);
    CHECK(v.derivative >= 2.0 * (p - 2.0) * (1.0 - theta) * n);
  }
}

TEST_CASE("f_eval and f0_eval derivatives match central differences") {
  const double h = 1e-6;
  for (double x : {1.05, 1.5, 3.0}) {
    const double fd = (f_eval(x + h, 0.7, 3.0, 1.03).value - f_eval(x - h, 0.7, 3.0, 1.03).value) / (2 * h);
    CHECK(f_eval(x, 0.7, 3.0, 1.03).derivative == doctest::Approx(fd).epsilon(1e-7));
    const double fd0 = (f0_eval(x + h, 1.2, 1.05).value - f0_eval(x - h, 1.2, 1.05).value) / (2 * h);
    CHECK(f0_eval(x, 1.2, 1.05).derivative == doctest::Approx(fd0).epsilon(1e-7));
  }
}

TEST_CASE("f0_eval identities") {
  for (double gamma : {0.9, 1.0, 2.5}) {
    CHECK(std::abs(f0_eval(1.0, gamma, 1.0).value) <= 1e-14);
    const double n0 = 1.07;
    const double x0 = std::pow(n0, 1.0 / (1.0 - 1.0 / (4.0 * gamma)));
    const FunctionValue v = f0_eval(x0, gamma, n0);
    CHECK(v.derivative == doctest::Approx(2.0 * n0).epsilon(1e-13));
    CHECK(v.value == doctest::Approx(-(4 * gamma - 3) * n0 * (x0 - 1.0)).epsilon(1e-12));
  }
}

TEST_CASE("domain checks on f and f0") {
  CHECK_THROWS_AS(f_eval(0.0, 0.8, 3.0, 1.0), DomainError);
  CHECK_THROWS_AS(f_eval(1.0, 0.4, 3.0, 1.0), DomainError);  // theta below vartheta(p,3)
  CHECK_THROWS_AS(f_eval(1.0, 0.8, 6.0, 1.0), DomainError);
  CHECK_THROWS_AS(f0_eval(1.0, 0.7, 1.0), DomainError);
  CHECK_THROWS_AS(f0_eval(1.0, 1.0, 0.0), DomainError);
}

TEST_CASE("solve_increasing_convex_root on analytic cases") {
  const RootResult r = solve_increasing_convex_root(
      [](double x) { return FunctionValue{x * x - 4.0, 2.0 * x}; }, 1.0, SolverOptions{});
  CHECK(std::abs(r.root - 2.0) <= 1e-12);
  CHECK(r.bracket_lo < r.root);
  CHECK(r.root <= r.bracket_hi);

  const RootResult one = solve_increasing_convex_root(
      [](double x) { return f_eval(x, 0.8, 3.0, 1.0); }, 1.0 - 1e-9, SolverOptions{});
  CHECK(std::abs(one.root - 1.0) <= 1e-12);

  CHECK_THROWS_AS(solve_increasing_convex_root(
                      [](double x) { return FunctionValue{x, 1.0}; }, 1.0, SolverOptions{}),
                  BracketFailure);
  CHECK_THROWS_AS(solve_increasing_convex_root(
                      [](double) { return FunctionValue{-1.0, 0.0}; }, 1.0, SolverOptions{}),
                  BracketFailure);
}

TEST_CASE("x_star against bisection and 50-digit references") {
  struct Case {
    double theta, p, frozen;
  };
  for (const Case c : {Case{0.5, 2.4, 1.0538013252721313102}, Case{0.9, 4.0, 1.0291292240774271158}}) {
    CAPTURE(c.theta);
    const RootResult r = x_star(c.theta, c.p);
    CHECK(rel_err(r.root, c.frozen) <= 1e-12);

    const double n = n_coeff(c.theta, c.p);
    const double lower = std::pow(n, 1.0 / beta_exponent(c.theta, c.p));
    const double ref = bisect([&](double x) { return f_eval(x, c.theta, c.p, n).value; },
                              lower * (1 + 1e-12), 4.0 * lower);
    CHECK(rel_err(r.root, ref) <= 1e-12);
    CHECK(r.root > lower);
    CHECK(r.residual <= 1e-10 * std::max(1.0, n));
    CHECK_FALSE(r.degenerate);
  }
}

TEST_CASE("x0_star against bisection and 50-digit references") {
  struct Case {
    double gamma, frozen;
  };
  for (const Case c : {Case{1.0, 1.1833165259179297165}, Case{2.5, 1.050808786896209776}}) {
    const RootResult r = x0_star(c.gamma);
    CHECK(rel_err(r.root, c.frozen) <= 1e-12);
    const double n0 = n0_coeff(c.gamma);
    const double lower = std::pow(n0, 1.0 / (1.0 - 1.0 / (4.0 * c.gamma)));
    const double ref = bisect([&](double x) { return f0_eval(x, c.gamma, n0).value; }, lower * (1 + 1e-12), 4.0);
    CHECK(rel_err(r.root, ref) <= 1e-12);
    CHECK(r.root > lower);
    CHECK(r.residual <= 1e-10 * std::max(1.0, n0));
  }
  CHECK_THROWS_AS(x0_star(0.75), DomainError);
}

TEST_CASE("x_star limits") {
  for (double p : {2.5, 3.0, 4.0}) CHECK(std::abs(x_star(1.0 - 1e-6, p).root - 1.0) <= 1e-3);
  const double p = 2.0 + 1e-5;
  for (double gamma : {1.0, 1.5, 2.0}) {
    CHECK(rel_err(x_star(gamma * (p - 2.0), p).root, x0_star(gamma).root) <= 1e-3);
  }
}

TEST_CASE("x_star near theta = 1 reports a degenerate root instead of failing") {
  const RootResult r = x_star(1.0 - 1e-15, 3.0);
  CHECK(r.degenerate);
  CHECK(std::abs(r.root - 1.0) <= 1e-9);
  CHECK_THROWS_AS(x_star(1.0, 3.0), DomainError);
  CHECK_THROWS_AS(x_star(0.4, 3.0), DomainError);
}

TEST_CASE("root results are bit-identical on repetition") {
  const RootResult a = x_star(0.7, 3.5);
  const RootResult b = x_star(0.7, 3.5);
  CHECK(std::memcmp(&a.root, &b.root, sizeof(double)) == 0);
  CHECK(a.iterations == b.iterations);
  CHECK(a.residual == b.residual);
}

TEST_CASE("sign pattern and convexity of f on both sides of x*") {
  for (double p : {2.4, 3.0, 5.0}) {
    const double theta = 0.5 * (vartheta(p, 3) + 1.0);
    const double n = n_coeff(theta, p);
    const double lower = std::pow(n, 1.0 / beta_exponent(theta, p));
    const double root = x_star(theta, p).root;
    auto f = [&](double x) { return f_eval(x, theta, p, n).value; };
    for (int k = 1; k <= 64; ++k) {
      CHECK(f(lower + (root - lower) * k / 65.0) < 0.0);
      CHECK(f(root + 9.0 * root * k / 65.0) > 0.0);
      const double x = lower + (10.0 * root - lower) * k / 65.0;
      const double h = (10.0 * root - lower) / 260.0;
      CHECK(f(x + h) - 2.0 * f(x) + f(x - h) > 0.0);
    }
  }
}
