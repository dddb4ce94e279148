#pragma once

// Gauss-Legendre quadrature on [0, 1], in two flavors: a composite rule for
// smooth integrands, and a weighted rule for integrals of the form
// int_0^1 t^(alpha-1) g(t) dt with alpha > 0. The weighted rule substitutes
// t = u^(1/alpha), which removes the power weight exactly, and evaluates the
// transformed integrand on a composite mesh geometrically graded toward both
// endpoints so that integrable endpoint singularities of g itself (exponents
// > -1) still converge well past 1e-8. Next to u = 1 the grading is capped
// at distance ~5e-11 (doubles resolve only ~1e-16 there) and the final
// sliver is closed by a local power-law fit, so algebraic behavior at the
// upper endpoint stays accurate without placing unrepresentable nodes.

#include <vector>

#include "hhfrac/types.hpp"

namespace hhfrac {

// Knobs for a single quadrature evaluation.
//   nodes    : Gauss-Legendre points per panel, >= 2.
//   panels   : >= 1. For integrate_smooth this is the uniform panel count;
//              for integrate_power_weight it scales the graded-mesh depth
//              (5 levels per panel toward each endpoint).
//   target_rel_tol : advisory accuracy target recorded alongside results;
//              callers compare err_estimate against it.
struct QuadratureSpec {
  int nodes = 32;
  int panels = 8;
  double target_rel_tol = 1e-10;
};

void validate(const QuadratureSpec& spec);

struct QuadResult {
  double value = 0.0;
  double err_estimate = 0.0;  // |value - coarser re-evaluation|, >= 0
  long evaluations = 0;       // integrand calls consumed, > 0
};

// Nodes (ascending, symmetric about 0) and weights of the n-point rule on
// [-1, 1]. Built once per order via Newton iteration on the Legendre
// recurrence, then cached immutably; safe for concurrent callers.
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

const GaussLegendreRule& gauss_legendre(int n);

// int_0^1 g, composite Gauss-Legendre on uniform panels. The error estimate
// compares against a run with half the panels. Throws EvaluationError if g
// returns a non-finite value.
QuadResult integrate_smooth(const RealFn& g, const QuadratureSpec& spec = {});

// int_0^1 t^(alpha-1) g(t) dt for alpha > 0 via the substitution t = u^(1/alpha).
// g must be integrable on (0, 1); endpoint singularities with exponent > -1
// are handled by the graded mesh (endpoints are never evaluated).
QuadResult integrate_power_weight(const RealFn& g, FracOrder alpha,
                                  const QuadratureSpec& spec = {});

}  // namespace hhfrac
