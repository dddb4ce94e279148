#pragma once

// Test functions and sampled membership checks for the generalized convexity
// classes the inequality suite quantifies over: convex functions, the
// Godunova-Levin class Q(I), P-functions, r-convex functions (power-mean
// convexity), and h-convex functions SX(h, I).
//
// Membership checking is falsification-only: "pass" means no violation was
// found at the configured sampling density, never a proof of membership.

#include <cstdint>
#include <string>
#include <vector>

#include "hhfrac/types.hpp"

namespace hhfrac {

// A named univariate function on an explicit domain. Parseable families keep
// a canonical id string so reports and configs round-trip; custom callables
// carry a caller-chosen id.
class FunctionSpec {
 public:
  enum class Family {
    affine,       // c0 + c1 x
    monomial,     // scale * x^k + shift
    exponential,  // c * exp(k x)
    reciprocal,   // scale / x
    abs_power,    // scale * |x|^p + shift
    sqrt_root,    // scale * sqrt(x) + shift
    custom,
  };

  // Grammar (families and key=value params, defaults in parentheses):
  //   monomial:k=<real> [,scale(1)] [,shift(0)]
  //   affine:c0=<real>(0),c1=<real>(1)
  //   const:c=<real>(1)
  //   exp:c=<real>(1),k=<real>(1)
  //   recip [:scale(1)]
  //   sqrt [:scale(1)] [,shift(0)]
  //   abspow:p=<real> [,scale(1)] [,shift(0)]
  // Unknown family or malformed params: std::invalid_argument.
  static FunctionSpec parse(const std::string& text, const Interval& domain);

  static FunctionSpec affine(double c0, double c1, const Interval& domain);
  static FunctionSpec constant(double c, const Interval& domain);
  static FunctionSpec monomial(double k, const Interval& domain,
                               double scale = 1.0, double shift = 0.0);
  static FunctionSpec exponential(double c, double k, const Interval& domain);
  static FunctionSpec reciprocal(const Interval& domain, double scale = 1.0);
  static FunctionSpec abs_power(double p, const Interval& domain,
                                double scale = 1.0, double shift = 0.0);
  static FunctionSpec sqrt_root(const Interval& domain, double scale = 1.0,
                                double shift = 0.0);
  static FunctionSpec custom(std::string id, RealFn fn, const Interval& domain);

  // Evaluates the function. Throws EvaluationError outside the domain or on
  // a non-finite result.
  double operator()(double x) const;
  RealFn as_fn() const;

  const std::string& id() const { return id_; }
  Family family() const { return family_; }
  const Interval& domain() const { return domain_; }

  // Whether the family's formula is finite everywhere on iv (e.g. recip
  // needs iv.a > 0, sqrt needs iv.a >= 0).
  bool admits(const Interval& iv) const;
  // Copy re-domiciled onto iv; throws std::domain_error if !admits(iv).
  FunctionSpec on(const Interval& iv) const;

  // Class ids this function is expected to satisfy on its domain, from the
  // fixed vocabulary used by MembershipReport::class_id. Metadata only; the
  // sweep machinery always re-verifies by sampling.
  const std::vector<std::string>& claimed_classes() const { return claims_; }
  bool claims(const std::string& class_id) const;
  FunctionSpec& claim(std::vector<std::string> class_ids);

 private:
  FunctionSpec(Family family, std::string id, const Interval& domain);

  Family family_;
  std::string id_;
  Interval domain_;
  double p0_ = 0.0;  // k / c0 / c / p, per family
  double p1_ = 0.0;  // c1 / k, per family
  double scale_ = 1.0;
  double shift_ = 0.0;
  RealFn fn_;  // custom only
  std::vector<std::string> claims_;
};

// Multiplier functions h : (0,1) -> (0, inf) for the h-convex class. The
// fixed families are the ones whose bound-side moments have known closed
// forms: identity (h=lambda, recovering nonnegative convex), constant
// (h=1, recovering P), reciprocal (h=1/lambda, recovering Q), and power
// (h=lambda^s with s in (0,1)).
class HFunction {
 public:
  enum class Family { identity, constant, reciprocal, power };

  static HFunction identity();
  static HFunction constant();
  static HFunction reciprocal();
  static HFunction power(double s);
  // "identity" | "const" | "recip" | "power:s=<real in (0,1)>"
  static HFunction parse(const std::string& text);

  // Requires lam in (0,1); throws std::domain_error otherwise.
  double operator()(double lam) const;
  double at_half() const;

  Family family() const { return family_; }
  double exponent() const { return s_; }
  const std::string& id() const { return id_; }

  // Whether int_0^1 t^(alpha-1) [h(t) + h(1-t)] dt is finite for every
  // alpha > 0. False only for the reciprocal family (log divergence at 1).
  bool moment_admissible() const;
  // Closed form of int_0^1 h(t) dt (diverges for reciprocal: domain error).
  double unit_integral() const;

 private:
  HFunction(Family family, double s, std::string id);

  Family family_;
  double s_;
  std::string id_;
};

// Deterministic sampling layout shared by all membership checks: a lambda
// grid crossed with an (x, y) grid, then seeded pseudo-random triples. The
// random stream is generated with an explicit 64-bit engine and explicit
// bit-to-double mapping so reports are identical across platforms.
struct SamplingPlan {
  int lambda_grid = 33;
  int point_grid = 17;
  int random_triples = 10000;
  std::uint64_t seed = 0;
  double membership_tol = 1e-9;  // absolute slack separating noise from violation
  double open_margin = 1e-3;     // lambda clearance for open-interval classes
};

void validate(const SamplingPlan& plan);

struct MembershipWitness {
  double x = 0.0;
  double y = 0.0;
  double lambda = 0.0;
};

struct MembershipReport {
  std::string class_id;
  std::string function_id;
  bool pass = false;
  long samples_used = 0;
  // Minimum sampled slack (defining inequality's rhs - lhs, or the function
  // value itself for nonnegativity scans). pass == (worst_margin >= -tol).
  double worst_margin = 0.0;
  MembershipWitness witness;
  double tolerance = 0.0;
};

// f(lam x + (1-lam) y) <= lam f(x) + (1-lam) f(y), lam over the closed grid.
MembershipReport check_convex(const FunctionSpec& f,
                              const SamplingPlan& plan = {});

// Q(I): f(lam x + (1-lam) y) <= f(x)/lam + f(y)/(1-lam), lam in the open
// interval (grid clipped by open_margin); includes a nonnegativity scan.
MembershipReport check_godunova_levin(const FunctionSpec& f,
                                      const SamplingPlan& plan = {});

// P(I): f(lam x + (1-lam) y) <= f(x) + f(y), closed lam grid, nonneg scan.
MembershipReport check_p_function(const FunctionSpec& f,
                                  const SamplingPlan& plan = {});

// r-convex: f(lam x + (1-lam) y) <= M_r(f(x), f(y); lam) for r in [0, 1]
// (r = 0 is the geometric-mean branch). Sampled f values must be strictly
// positive; a non-positive sample raises std::domain_error.
MembershipReport check_r_convex(const FunctionSpec& f, double r,
                                const SamplingPlan& plan = {});

// SX(h, I): f(lam x + (1-lam) y) <= h(lam) f(x) + h(1-lam) f(y), open lam
// grid, nonneg scan.
MembershipReport check_h_convex(const FunctionSpec& f, const HFunction& h,
                                const SamplingPlan& plan = {});

// The cubic combination f(x)(x-y)(x-z) + f(y)(y-x)(y-z) + f(z)(z-x)(z-y),
// nonnegative for members of Q(I). Points must be pairwise distinct.
double godunova_levin_triple(const FunctionSpec& f, double x, double y,
                             double z);

// Weighted power mean: (lam x^r + (1-lam) y^r)^(1/r) for r != 0, x^lam
// y^(1-lam) for r = 0. Evaluated through expm1/log1p so the r -> 0 limit is
// continuous at double precision. x, y must be positive.
double power_mean(double x, double y, double lambda, double r);

// The standard exercise set: x^2, x, e^x on [0,1]; 1/x on [1,2]; |x|^(3/2)
// and the concave control sqrt(x) on [0,1]; the constant 1. Claims document
// which classes each member is expected to satisfy on its own domain.
std::vector<FunctionSpec> default_corpus();

// Uniform double in [0, 1) from the top 53 bits of a 64-bit draw; the
// explicit mapping keeps sampled reports byte-identical across platforms.
double uniform01(std::uint64_t raw);

}  // namespace hhfrac
