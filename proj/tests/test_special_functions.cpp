#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "hhfrac/special_functions.hpp"

using namespace hhfrac;

namespace {
const SpecialFnAccuracy kAcc{};

bool close_rel(double got, double want, double rel, double abs_floor) {
  return std::abs(got - want) <= std::max(abs_floor, rel * std::abs(want));
}
}  // namespace

TEST_CASE("gamma golden values") {
  const double sqrt_pi = std::sqrt(std::acos(-1.0));
  CHECK(close_rel(gamma_fn(1.0), 1.0, kAcc.rel_tol, kAcc.abs_tol));
  CHECK(close_rel(gamma_fn(2.0), 1.0, kAcc.rel_tol, kAcc.abs_tol));
  CHECK(close_rel(gamma_fn(5.0), 24.0, kAcc.rel_tol, kAcc.abs_tol));
  CHECK(close_rel(gamma_fn(0.5), sqrt_pi, kAcc.rel_tol, kAcc.abs_tol));
  CHECK(close_rel(gamma_fn(1.5), 0.5 * sqrt_pi, kAcc.rel_tol, kAcc.abs_tol));
  CHECK(close_rel(gamma_fn(10.0), 362880.0, kAcc.rel_tol, 0.0));
}

TEST_CASE("gamma recurrence on a log grid") {
  for (double x = 1e-3; x <= 50.0; x *= 1.37) {
    const double lhs = gamma_fn(x + 1.0);
    const double rhs = x * gamma_fn(x);
    CHECK_MESSAGE(close_rel(lhs, rhs, 1e-12, 1e-300), "x = ", x);
  }
}

TEST_CASE("gamma and log-gamma agree with the standard library") {
  for (double x = 0.05; x <= 170.0; x *= 1.21) {
    CHECK_MESSAGE(close_rel(gamma_fn(x), std::tgamma(x), 1e-12, 1e-13),
                  "x = ", x);
    CHECK_MESSAGE(std::abs(log_gamma(x) - std::lgamma(x)) <=
                      1e-12 * std::max(1.0, std::abs(std::lgamma(x))),
                  "x = ", x);
  }
}

TEST_CASE("log-gamma consistent with gamma") {
  for (double x : {0.1, 0.5, 1.0, 2.5, 7.0, 40.0}) {
    CHECK(close_rel(std::exp(log_gamma(x)), gamma_fn(x), 1e-12, 1e-14));
  }
}

TEST_CASE("gamma overflow policy") {
  CHECK(std::isinf(gamma_fn(180.0)));
  CHECK(std::isfinite(log_gamma(180.0)));
  CHECK(std::isfinite(log_gamma(1e6)));
}

TEST_CASE("beta golden values and symmetry") {
  const double pi = std::acos(-1.0);
  CHECK(close_rel(beta_fn(1.0, 1.0), 1.0, kAcc.rel_tol, kAcc.abs_tol));
  CHECK(close_rel(beta_fn(0.5, 0.5), pi, kAcc.rel_tol, kAcc.abs_tol));
  CHECK(close_rel(beta_fn(2.0, 1.5), 4.0 / 15.0, kAcc.rel_tol, kAcc.abs_tol));
  CHECK(close_rel(beta_fn(2.0, 3.0), 1.0 / 12.0, kAcc.rel_tol, kAcc.abs_tol));
  // Beta(1, q) = 1/q backs the alpha = 1 reduction of the r-convex bound.
  for (double q : {0.5, 1.0, 1.5, 2.0, 3.0}) {
    CHECK(close_rel(beta_fn(1.0, q), 1.0 / q, 1e-12, 1e-14));
  }
  for (double p : {0.25, 0.7, 2.0, 9.0}) {
    for (double q : {0.3, 1.0, 4.5}) {
      CHECK(beta_fn(p, q) == doctest::Approx(beta_fn(q, p)).epsilon(1e-13));
      CHECK(close_rel(log_beta(p, q),
                      std::lgamma(p) + std::lgamma(q) - std::lgamma(p + q),
                      1e-12, 1e-13));
    }
  }
}

TEST_CASE("domain policy") {
  CHECK_THROWS_AS(gamma_fn(0.0), std::domain_error);
  CHECK_THROWS_AS(gamma_fn(-2.5), std::domain_error);
  CHECK_THROWS_AS(gamma_fn(std::nan("")), std::domain_error);
  CHECK_THROWS_AS(log_gamma(-1.0), std::domain_error);
  CHECK_THROWS_AS(log_beta(0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(beta_fn(1.0, -1.0), std::domain_error);
}

TEST_CASE("accuracy contract validation") {
  CHECK_NOTHROW(validate(SpecialFnAccuracy{}));
  CHECK_THROWS_AS(validate(SpecialFnAccuracy{0.0, 1e-14}),
                  std::invalid_argument);
  CHECK_THROWS_AS(validate(SpecialFnAccuracy{1e-12, -1.0}),
                  std::invalid_argument);
}
