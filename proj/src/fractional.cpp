#include "hhfrac/fractional.hpp"

#include <cmath>

#include "hhfrac/special_functions.hpp"

namespace hhfrac {

namespace {

// (b-a)^alpha / Gamma(alpha), in log space so large alpha and short or long
// intervals do not overflow intermediates.
double operator_scale(double length, double alpha) {
  return std::exp(alpha * std::log(length) - log_gamma(alpha));
}

}  // namespace

double rl_left(const RealFn& f, const Interval& iv, FracOrder alpha,
               const QuadratureSpec& spec) {
  const double len = iv.length();
  const RealFn g = [&f, &iv, len](double s) { return f(iv.b - len * s); };
  return operator_scale(len, alpha.alpha) *
         integrate_power_weight(g, alpha, spec).value;
}

double rl_right(const RealFn& f, const Interval& iv, FracOrder alpha,
                const QuadratureSpec& spec) {
  const double len = iv.length();
  const RealFn g = [&f, &iv, len](double s) { return f(iv.a + len * s); };
  return operator_scale(len, alpha.alpha) *
         integrate_power_weight(g, alpha, spec).value;
}

RLBracket rl_bracket(const RealFn& f, const Interval& iv, FracOrder alpha,
                     const QuadratureSpec& spec) {
  RLBracket out;
  out.left = rl_left(f, iv, alpha, spec);
  out.right = rl_right(f, iv, alpha, spec);
  out.bracket = out.left + out.right;
  const double norm = 0.5 * std::exp(log_gamma(alpha.alpha + 1.0) -
                                     alpha.alpha * std::log(iv.length()));
  out.normalized_mean = norm * out.bracket;
  return out;
}

double midpoint_form(const RealFn& f, const Interval& iv, FracOrder alpha,
                     const QuadratureSpec& spec) {
  const RealFn g = [&f, &iv](double t) {
    return f(t * iv.a + (1.0 - t) * iv.b) + f((1.0 - t) * iv.a + t * iv.b);
  };
  return integrate_power_weight(g, alpha, spec).value;
}

}  // namespace hhfrac
