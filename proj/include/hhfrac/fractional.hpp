#pragma once

// Riemann-Liouville fractional integrals of order alpha > 0 over [a, b]:
//
//   left  J_{a+} f (b) = 1/Gamma(alpha) int_a^b (b - t)^(alpha-1) f(t) dt
//   right J_{b-} f (a) = 1/Gamma(alpha) int_a^b (t - a)^(alpha-1) f(t) dt
//
// both reduced to the unit-interval weighted form
// (b-a)^alpha / Gamma(alpha) * int_0^1 s^(alpha-1) f(. ) ds before quadrature.
// At alpha = 1 both sides collapse to the plain integral of f over [a, b].

#include "hhfrac/quadrature.hpp"
#include "hhfrac/types.hpp"

namespace hhfrac {

// The symmetric operator pair and the combinations the inequality bounds
// consume. normalized_mean = Gamma(alpha+1) / (2 (b-a)^alpha) * bracket is
// the fractional analogue of the integral mean: it equals
// 1/(b-a) int_a^b f at alpha = 1 and f(c) for constant f at every alpha.
struct RLBracket {
  double left = 0.0;
  double right = 0.0;
  double bracket = 0.0;  // left + right
  double normalized_mean = 0.0;
};

double rl_left(const RealFn& f, const Interval& iv, FracOrder alpha,
               const QuadratureSpec& spec = {});

double rl_right(const RealFn& f, const Interval& iv, FracOrder alpha,
                const QuadratureSpec& spec = {});

RLBracket rl_bracket(const RealFn& f, const Interval& iv, FracOrder alpha,
                     const QuadratureSpec& spec = {});

// int_0^1 t^(alpha-1) [ f(t a + (1-t) b) + f((1-t) a + t b) ] dt, the
// change-of-variables form of bracket * Gamma(alpha) / (b-a)^alpha. Having
// both routes lets consistency checks catch substitution mistakes.
double midpoint_form(const RealFn& f, const Interval& iv, FracOrder alpha,
                     const QuadratureSpec& spec = {});

}  // namespace hhfrac
