#pragma once

// Gamma, log-gamma and beta for positive real arguments. These back the
// normalization constants of the fractional operators and the coefficient
// arithmetic of the inequality bounds, so they are kept dependency-free and
// accurate to ~1e-13 relative over the argument ranges the toolkit uses.

namespace hhfrac {

// Accuracy contract for the special-function kernels; both tolerances are
// strictly positive. Consumed by the self-test harness.
struct SpecialFnAccuracy {
  double rel_tol = 1e-12;
  double abs_tol = 1e-14;
};

void validate(const SpecialFnAccuracy& acc);

// Gamma(x) for finite x > 0. Overflows to +inf above x ~ 171.6; relative
// error below 1e-12 on (0, 170]. Throws std::domain_error for x <= 0 or
// non-finite x.
double gamma_fn(double x);

// log(Gamma(x)) for finite x > 0. Same domain policy as gamma_fn.
double log_gamma(double x);

// log(Beta(p, q)) = log_gamma(p) + log_gamma(q) - log_gamma(p + q),
// for finite p, q > 0.
double log_beta(double p, double q);

// Beta(p, q), evaluated in log space so large arguments do not overflow
// intermediates.
double beta_fn(double p, double q);

}  // namespace hhfrac
