#pragma once

// Hermite-Hadamard-type inequality chains: the five classical baselines
// (convex, Godunova-Levin, P-function, r-convex, h-convex) and their
// fractional-integral counterparts, evaluated numerically with margin
// bookkeeping, alpha = 1 reduction cross-checks, and a seeded falsification
// driver.
//
// Chain definitions, with mid = (a+b)/2, len = b - a, and bracket the sum of
// the left and right fractional integrals over [a, b]:
//
//   hh_classical   f(mid) <= (1/len) int f        <= (f(a)+f(b))/2
//   q_classical    f(mid) <= (4/len) int f
//   p_classical    f(mid) <= (2/len) int f        <= 2 (f(a)+f(b))
//   r_classical    (1/len) int f <= (r/(r+1))^(1/r) (f(a)^r+f(b)^r)^(1/r)
//   h_classical    f(mid)/(2 h(1/2)) <= (1/len) int f <= (f(a)+f(b)) int_0^1 h
//
//   hh_fractional  f(mid) <= Gamma(alpha+1)/(2 len^alpha) bracket <= (f(a)+f(b))/2
//   q_fractional   f(mid) <= 2 Gamma(alpha+1)/len^alpha bracket
//   p_fractional   f(mid) <= Gamma(alpha+1)/len^alpha bracket <= 2 (f(a)+f(b))
//   r_fractional   Gamma(alpha)/len^alpha bracket <=
//                    [ c1 f(a)^r + c2 f(b)^r ]^(1/r) + [ c2 f(a)^r + c1 f(b)^r ]^(1/r)
//                  with c1 = (1/(alpha+1/r))^r, c2 = Beta(alpha,(r+1)/r)^r.
//                  (The lhs normalization Gamma(alpha) is the one the
//                  derivation supports; both weight integrals it rests on
//                  carry 1/Gamma(alpha), and the chain fails for constants
//                  at alpha = 3 under a Gamma(alpha+1) reading.)
//   h_fractional   f(mid)/(alpha h(1/2)) <= Gamma(alpha)/len^alpha bracket
//                    <= (f(a)+f(b)) int_0^1 t^(alpha-1) [h(t)+h(1-t)] dt

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hhfrac/fractional.hpp"
#include "hhfrac/function_classes.hpp"
#include "hhfrac/quadrature.hpp"
#include "hhfrac/types.hpp"

namespace hhfrac {

enum class TheoremId {
  hh_classical,
  q_classical,
  p_classical,
  r_classical,
  h_classical,
  hh_fractional,
  q_fractional,
  p_fractional,
  r_fractional,
  h_fractional,
};

std::string to_string(TheoremId id);
TheoremId theorem_from_string(const std::string& text);
bool is_fractional(TheoremId id);
bool needs_r(TheoremId id);
bool needs_h(TheoremId id);
const std::vector<TheoremId>& fractional_theorems();
// The classical chain a fractional chain specializes to at alpha = 1.
TheoremId classical_counterpart(TheoremId fractional_id);

struct Side {
  std::string name;
  double value = 0.0;
};

struct CaseInputs {
  std::string function_id;
  double a = 0.0;
  double b = 1.0;
  double alpha = 1.0;
  std::optional<double> r;
  std::optional<std::string> h_id;
};

struct BoundReport {
  TheoremId theorem = TheoremId::hh_fractional;
  CaseInputs inputs;
  std::vector<Side> sides;      // chain order; all finite
  std::vector<double> margins;  // sides[i+1].value - sides[i].value
  double tolerance = 0.0;       // tolerance_scale * max(1, |last side|)
  bool satisfied = false;       // min margin >= -tolerance
  bool preconditions_checked = false;
  bool preconditions_met = true;
  std::vector<std::string> notes;
};

double min_margin(const BoundReport& report);

struct EvalOptions {
  QuadratureSpec quadrature{};
  SamplingPlan sampling{};
  // Enforce the interval-sign hypothesis (a >= 0) stated for the convex and
  // Godunova-Levin fractional chains; off evaluates them anyway.
  bool strict_preconditions = true;
  // Annotate each report with a sampled membership verdict for the class the
  // chain quantifies over.
  bool check_membership = true;
  double tolerance_scale = 1e-9;
};

BoundReport eval_hh_fractional(const FunctionSpec& f, const Interval& iv,
                               FracOrder alpha, const EvalOptions& opt = {});
BoundReport eval_q_fractional(const FunctionSpec& f, const Interval& iv,
                              FracOrder alpha, const EvalOptions& opt = {});
BoundReport eval_p_fractional(const FunctionSpec& f, const Interval& iv,
                              FracOrder alpha, const EvalOptions& opt = {});
// Requires 0 < r <= 1 and f > 0 at the endpoints (and, via membership
// sampling, everywhere sampled).
BoundReport eval_r_fractional(const FunctionSpec& f, const Interval& iv,
                              FracOrder alpha, double r,
                              const EvalOptions& opt = {});
// h must have a convergent bound-side moment (all built-in families except
// recip); violations raise std::domain_error.
BoundReport eval_h_fractional(const FunctionSpec& f, const HFunction& h,
                              const Interval& iv, FracOrder alpha,
                              const EvalOptions& opt = {});

// Parameters a chain may need beyond (f, iv, alpha).
struct Extras {
  std::optional<double> r;
  std::optional<HFunction> h;
  // Order used by the any-alpha h=identity cross-check entry of
  // check_reductions; defaults to 1.
  std::optional<double> alpha;
};

// Evaluates the classical (alpha = 1) chain named by classical_id. Integral
// means route through the same endpoint-graded quadrature as the fractional
// operators so kinked corpus members agree with their alpha = 1 fractional
// evaluations to quadrature accuracy.
BoundReport eval_classical_baseline(const FunctionSpec& f, const Interval& iv,
                                    TheoremId classical_id,
                                    const Extras& extras = {},
                                    const EvalOptions& opt = {});

// Uniform dispatcher: fractional ids use alpha, classical ids ignore it.
BoundReport eval_theorem(TheoremId id, const FunctionSpec& f,
                         const Interval& iv, FracOrder alpha,
                         const Extras& extras = {},
                         const EvalOptions& opt = {});

// One side-by-side comparison between a fractional chain (its sides scaled
// by `normalization`) and a target chain on the same inputs.
struct ReductionEntry {
  TheoremId from = TheoremId::hh_fractional;
  TheoremId target = TheoremId::hh_classical;
  double alpha = 1.0;  // order the `from` chain was evaluated at
  std::optional<double> r;
  std::optional<std::string> h_id;
  double normalization = 1.0;
  std::vector<Side> from_sides;  // after normalization
  std::vector<Side> target_sides;
  std::vector<double> abs_diff;  // positional |from - target|
  bool expect_identical = true;
  bool identical = false;    // max abs_diff <= tolerance
  bool ordering_ok = true;   // comparison entries: from rhs >= target rhs - tol
  bool skipped = false;      // inputs inadmissible for this entry
  double tolerance = 0.0;
  std::vector<std::string> notes;
};

struct ReductionReport {
  std::string function_id;
  double a = 0.0;
  double b = 1.0;
  std::vector<ReductionEntry> entries;
  bool all_ok = false;
};

// Audits every documented specialization on one function: the three alpha=1
// identities (convex, Godunova-Levin, P), the h-chain's alpha=1 identity
// (factor 1/2) and its h=identity cross-check (factor alpha/2) against the
// convex fractional chain, and the r-chain's alpha=1 comparison (factor 1/2,
// right sides ordered, not identical). Interval-sign restrictions are
// relaxed internally; these are numeric identity checks.
ReductionReport check_reductions(const FunctionSpec& f, const Interval& iv,
                                 const Extras& extras = {},
                                 const EvalOptions& opt = {});

struct FalsifyConfig {
  TheoremId theorem = TheoremId::hh_fractional;
  // "in-class"  : members of the chain's class; any margin below
  //               -10*tolerance is a finding (expected: none).
  // "concave"   : concave controls (first trial is sqrt(x) on [0,1] at
  //               alpha=1); at least one margin violation expected.
  // "negative"  : functions dipping below zero; at least one violation or
  //               precondition failure expected.
  std::string generator = "in-class";
  int trials = 64;
  std::uint64_t seed = 0;
  // strict_preconditions is forced off internally: falsification evaluates
  // chains regardless of stated hypotheses. Membership annotation stays on.
  EvalOptions options;
};

struct FalsifyCase {
  std::optional<BoundReport> report;  // absent when evaluation threw
  std::string error;
  bool violation = false;             // report present and not satisfied
  bool finding = false;               // margin < -10 * tolerance
  bool precondition_failure = false;
};

struct FalsifyOutcome {
  TheoremId theorem = TheoremId::hh_fractional;
  std::string generator;
  std::uint64_t seed = 0;
  std::vector<FalsifyCase> cases;
  int violations = 0;
  int findings = 0;
  int precondition_failures = 0;
  std::string expectation;  // what this generator promises
  bool expectation_met = false;
};

FalsifyOutcome falsify(const FalsifyConfig& config);

}  // namespace hhfrac
