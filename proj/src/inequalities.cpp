#include "hhfrac/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "hhfrac/special_functions.hpp"

namespace hhfrac {

namespace {

constexpr double kReductionTolScale = 1e-10;

Side side(std::string name, double value) { return {std::move(name), value}; }

double log_sum_exp(double x, double y) {
  const double m = std::max(x, y);
  return m + std::log1p(std::exp(std::min(x, y) - m));
}

// Gamma(alpha) / len^alpha, the raw-moment normalization shared by the
// r-convex and h-convex chains (in contrast to normalized_mean, which
// carries Gamma(alpha + 1) / 2).
double raw_moment_scale(double len, double alpha) {
  return std::exp(log_gamma(alpha) - alpha * std::log(len));
}

FunctionSpec rescope(const FunctionSpec& f, const Interval& iv) {
  if (f.domain() == iv) {
    return f;
  }
  if (!f.admits(iv)) {
    throw std::domain_error("function '" + f.id() +
                            "' is not finite on the requested interval");
  }
  return f.on(iv);
}

std::string format_witness(const MembershipWitness& w) {
  std::ostringstream out;
  out << "(x = " << w.x << ", y = " << w.y << ", lambda = " << w.lambda << ")";
  return out.str();
}

void apply_membership(BoundReport& report, const MembershipReport& m) {
  if (m.pass) {
    return;
  }
  report.preconditions_met = false;
  std::ostringstream note;
  note << "sampled membership violation for class " << m.class_id
       << ": worst margin " << m.worst_margin << " at "
       << format_witness(m.witness);
  report.notes.push_back(note.str());
}

// Endpoint/grid scan for sampled nonnegativity, used where a chain's
// hypothesis asks for a nonnegative function but the membership check for
// its class does not already include one.
void scan_nonnegative(BoundReport& report, const FunctionSpec& f,
                      const SamplingPlan& plan) {
  const Interval& iv = f.domain();
  const int grid = std::max(2, plan.point_grid);
  double worst = std::numeric_limits<double>::infinity();
  double at = iv.a;
  for (int i = 0; i < grid; ++i) {
    const double x = i == grid - 1
                         ? iv.b
                         : std::clamp(iv.a + iv.length() * i / (grid - 1),
                                      iv.a, iv.b);
    const double v = f(x);
    if (v < worst) {
      worst = v;
      at = x;
    }
  }
  const double vm = f(iv.midpoint());
  if (vm < worst) {
    worst = vm;
    at = iv.midpoint();
  }
  if (worst < -plan.membership_tol) {
    report.preconditions_met = false;
    std::ostringstream note;
    note << "nonnegativity scan found f(" << at << ") = " << worst;
    report.notes.push_back(note.str());
  }
}

// Fills the membership annotation for the class the chain quantifies over.
void annotate(BoundReport& report, const FunctionSpec& f,
              std::optional<double> r, const HFunction* h,
              const EvalOptions& opt) {
  report.preconditions_checked = true;
  if (!opt.check_membership) {
    return;
  }
  switch (report.theorem) {
    case TheoremId::hh_classical:
      apply_membership(report, check_convex(f, opt.sampling));
      break;
    case TheoremId::hh_fractional:
      apply_membership(report, check_convex(f, opt.sampling));
      scan_nonnegative(report, f, opt.sampling);
      break;
    case TheoremId::q_classical:
    case TheoremId::q_fractional:
      apply_membership(report, check_godunova_levin(f, opt.sampling));
      break;
    case TheoremId::p_classical:
    case TheoremId::p_fractional:
      apply_membership(report, check_p_function(f, opt.sampling));
      break;
    case TheoremId::r_classical:
    case TheoremId::r_fractional:
      try {
        apply_membership(report, check_r_convex(f, r.value(), opt.sampling));
      } catch (const std::domain_error& e) {
        report.preconditions_met = false;
        report.notes.push_back(
            std::string("r-convex membership check not applicable: ") +
            e.what());
      }
      break;
    case TheoremId::h_classical:
    case TheoremId::h_fractional:
      apply_membership(report, check_h_convex(f, *h, opt.sampling));
      break;
  }
}

void finalize(BoundReport& report, const EvalOptions& opt) {
  report.margins.clear();
  for (std::size_t i = 0; i + 1 < report.sides.size(); ++i) {
    report.margins.push_back(report.sides[i + 1].value -
                             report.sides[i].value);
  }
  const double anchor =
      report.sides.empty() ? 1.0 : std::abs(report.sides.back().value);
  report.tolerance = opt.tolerance_scale * std::max(1.0, anchor);
  report.satisfied = min_margin(report) >= -report.tolerance;
}

// Interval-sign hypothesis shared by the convex and Godunova-Levin
// fractional chains.
void require_nonnegative_left(BoundReport& report, const Interval& iv,
                              const EvalOptions& opt, const char* chain) {
  if (iv.a >= 0.0) {
    return;
  }
  if (opt.strict_preconditions) {
    std::ostringstream msg;
    msg << chain << " is stated for intervals with 0 <= a; got a = " << iv.a
        << " (disable strict preconditions to evaluate anyway)";
    throw std::domain_error(msg.str());
  }
  report.preconditions_met = false;
  report.notes.push_back(
      "interval-sign hypothesis (0 <= a) not met; evaluated anyway");
}

CaseInputs make_inputs(const FunctionSpec& f, const Interval& iv,
                       double alpha) {
  CaseInputs inputs;
  inputs.function_id = f.id();
  inputs.a = iv.a;
  inputs.b = iv.b;
  inputs.alpha = alpha;
  return inputs;
}

}  // namespace

std::string to_string(TheoremId id) {
  switch (id) {
    case TheoremId::hh_classical:
      return "hh_classical";
    case TheoremId::q_classical:
      return "q_classical";
    case TheoremId::p_classical:
      return "p_classical";
    case TheoremId::r_classical:
      return "r_classical";
    case TheoremId::h_classical:
      return "h_classical";
    case TheoremId::hh_fractional:
      return "hh_fractional";
    case TheoremId::q_fractional:
      return "q_fractional";
    case TheoremId::p_fractional:
      return "p_fractional";
    case TheoremId::r_fractional:
      return "r_fractional";
    case TheoremId::h_fractional:
      return "h_fractional";
  }
  throw std::invalid_argument("unknown theorem id");
}

TheoremId theorem_from_string(const std::string& text) {
  static const std::vector<TheoremId> all = {
      TheoremId::hh_classical, TheoremId::q_classical, TheoremId::p_classical,
      TheoremId::r_classical,  TheoremId::h_classical, TheoremId::hh_fractional,
      TheoremId::q_fractional, TheoremId::p_fractional,
      TheoremId::r_fractional, TheoremId::h_fractional,
  };
  for (TheoremId id : all) {
    if (to_string(id) == text) {
      return id;
    }
  }
  throw std::invalid_argument("unknown theorem id '" + text + "'");
}

bool is_fractional(TheoremId id) {
  switch (id) {
    case TheoremId::hh_fractional:
    case TheoremId::q_fractional:
    case TheoremId::p_fractional:
    case TheoremId::r_fractional:
    case TheoremId::h_fractional:
      return true;
    default:
      return false;
  }
}

bool needs_r(TheoremId id) {
  return id == TheoremId::r_classical || id == TheoremId::r_fractional;
}

bool needs_h(TheoremId id) {
  return id == TheoremId::h_classical || id == TheoremId::h_fractional;
}

const std::vector<TheoremId>& fractional_theorems() {
  static const std::vector<TheoremId> ids = {
      TheoremId::hh_fractional, TheoremId::q_fractional,
      TheoremId::p_fractional, TheoremId::r_fractional,
      TheoremId::h_fractional,
  };
  return ids;
}

TheoremId classical_counterpart(TheoremId fractional_id) {
  switch (fractional_id) {
    case TheoremId::hh_fractional:
      return TheoremId::hh_classical;
    case TheoremId::q_fractional:
      return TheoremId::q_classical;
    case TheoremId::p_fractional:
      return TheoremId::p_classical;
    case TheoremId::r_fractional:
      return TheoremId::r_classical;
    case TheoremId::h_fractional:
      return TheoremId::h_classical;
    default:
      throw std::invalid_argument("classical_counterpart expects a fractional id");
  }
}

double min_margin(const BoundReport& report) {
  double worst = std::numeric_limits<double>::infinity();
  for (double m : report.margins) {
    worst = std::min(worst, m);
  }
  return report.margins.empty() ? 0.0 : worst;
}

BoundReport eval_hh_fractional(const FunctionSpec& f, const Interval& iv,
                               FracOrder alpha, const EvalOptions& opt) {
  const FunctionSpec g = rescope(f, iv);
  BoundReport report;
  report.theorem = TheoremId::hh_fractional;
  report.inputs = make_inputs(g, iv, alpha.alpha);
  require_nonnegative_left(report, iv, opt, "the convex fractional chain");
  const RLBracket br = rl_bracket(g.as_fn(), iv, alpha, opt.quadrature);
  const double fa = g(iv.a);
  const double fb = g(iv.b);
  report.sides = {
      side("f_mid", g(iv.midpoint())),
      side("frac_mean", br.normalized_mean),
      side("endpoint_avg", 0.5 * (fa + fb)),
  };
  annotate(report, g, std::nullopt, nullptr, opt);
  finalize(report, opt);
  return report;
}

BoundReport eval_q_fractional(const FunctionSpec& f, const Interval& iv,
                              FracOrder alpha, const EvalOptions& opt) {
  const FunctionSpec g = rescope(f, iv);
  BoundReport report;
  report.theorem = TheoremId::q_fractional;
  report.inputs = make_inputs(g, iv, alpha.alpha);
  require_nonnegative_left(report, iv, opt,
                           "the Godunova-Levin fractional chain");
  const RLBracket br = rl_bracket(g.as_fn(), iv, alpha, opt.quadrature);
  report.sides = {
      side("f_mid", g(iv.midpoint())),
      side("q_bound", 4.0 * br.normalized_mean),
  };
  annotate(report, g, std::nullopt, nullptr, opt);
  finalize(report, opt);
  return report;
}

BoundReport eval_p_fractional(const FunctionSpec& f, const Interval& iv,
                              FracOrder alpha, const EvalOptions& opt) {
  const FunctionSpec g = rescope(f, iv);
  BoundReport report;
  report.theorem = TheoremId::p_fractional;
  report.inputs = make_inputs(g, iv, alpha.alpha);
  const RLBracket br = rl_bracket(g.as_fn(), iv, alpha, opt.quadrature);
  const double fa = g(iv.a);
  const double fb = g(iv.b);
  report.sides = {
      side("f_mid", g(iv.midpoint())),
      side("p_mean", 2.0 * br.normalized_mean),
      side("p_bound", 2.0 * (fa + fb)),
  };
  annotate(report, g, std::nullopt, nullptr, opt);
  finalize(report, opt);
  return report;
}

BoundReport eval_r_fractional(const FunctionSpec& f, const Interval& iv,
                              FracOrder alpha, double r,
                              const EvalOptions& opt) {
  if (!(r > 0.0 && r <= 1.0)) {
    throw std::invalid_argument("the r-convex chains require r in (0, 1]");
  }
  const FunctionSpec g = rescope(f, iv);
  BoundReport report;
  report.theorem = TheoremId::r_fractional;
  report.inputs = make_inputs(g, iv, alpha.alpha);
  report.inputs.r = r;
  const double fa = g(iv.a);
  const double fb = g(iv.b);
  if (!(fa > 0.0 && fb > 0.0)) {
    throw std::domain_error(
        "the r-convex chain needs strictly positive endpoint values");
  }
  const RLBracket br = rl_bracket(g.as_fn(), iv, alpha, opt.quadrature);
  const double a = alpha.alpha;
  const double lhs = raw_moment_scale(iv.length(), a) * br.bracket;
  // Bound-side weights c1 = (1/(alpha + 1/r))^r, c2 = Beta(alpha, (r+1)/r)^r,
  // combined in log space so small r and spread endpoint values stay stable.
  const double lfa = std::log(fa);
  const double lfb = std::log(fb);
  const double lc1 = -std::log(a + 1.0 / r);
  const double lc2 = log_beta(a, (r + 1.0) / r);
  const double term1 =
      std::exp(log_sum_exp(r * (lc1 + lfa), r * (lc2 + lfb)) / r);
  const double term2 =
      std::exp(log_sum_exp(r * (lc2 + lfa), r * (lc1 + lfb)) / r);
  report.sides = {
      side("r_mean", lhs),
      side("r_bound", term1 + term2),
  };
  annotate(report, g, r, nullptr, opt);
  finalize(report, opt);
  return report;
}

BoundReport eval_h_fractional(const FunctionSpec& f, const HFunction& h,
                              const Interval& iv, FracOrder alpha,
                              const EvalOptions& opt) {
  if (!h.moment_admissible()) {
    throw std::domain_error(
        "h = " + h.id() +
        " has a divergent bound-side moment; the h-convex chain is stated "
        "only where that moment converges");
  }
  const FunctionSpec g = rescope(f, iv);
  BoundReport report;
  report.theorem = TheoremId::h_fractional;
  report.inputs = make_inputs(g, iv, alpha.alpha);
  report.inputs.h_id = h.id();
  const double h_half = h.at_half();
  if (!(h_half > 0.0)) {
    throw std::domain_error("h(1/2) must be positive");
  }
  const RLBracket br = rl_bracket(g.as_fn(), iv, alpha, opt.quadrature);
  const double a = alpha.alpha;
  const double fa = g(iv.a);
  const double fb = g(iv.b);
  // The graded quadrature mesh probes t below machine epsilon, where 1 - t
  // rounds to exactly 1 and would exit h's open domain; clamp both arguments
  // into the open interval. The admissible h families extend continuously to
  // the endpoints, so the clamp is exact to rounding.
  const double interior_hi = std::nextafter(1.0, 0.0);
  const double interior_lo = 1.0 - interior_hi;
  const RealFn symmetrized = [&h, interior_lo, interior_hi](double t) {
    const double fwd = std::clamp(t, interior_lo, interior_hi);
    const double rev = std::clamp(1.0 - t, interior_lo, interior_hi);
    return h(fwd) + h(rev);
  };
  const double moment =
      integrate_power_weight(symmetrized, alpha, opt.quadrature).value;
  report.sides = {
      side("h_lower", g(iv.midpoint()) / (a * h_half)),
      side("h_mean", raw_moment_scale(iv.length(), a) * br.bracket),
      side("h_bound", (fa + fb) * moment),
  };
  annotate(report, g, std::nullopt, &h, opt);
  finalize(report, opt);
  return report;
}

BoundReport eval_classical_baseline(const FunctionSpec& f, const Interval& iv,
                                    TheoremId classical_id,
                                    const Extras& extras,
                                    const EvalOptions& opt) {
  if (is_fractional(classical_id)) {
    throw std::invalid_argument(
        "eval_classical_baseline expects a classical chain id");
  }
  const FunctionSpec g = rescope(f, iv);
  BoundReport report;
  report.theorem = classical_id;
  report.inputs = make_inputs(g, iv, 1.0);
  const double len = iv.length();
  // (1/len) int_a^b f, through the same endpoint-graded rule the fractional
  // operators use so kinked integrands agree with alpha = 1 evaluations.
  const RealFn pulled = [&g, &iv, len](double t) { return g(iv.a + len * t); };
  const double mean =
      integrate_power_weight(pulled, FracOrder(1.0), opt.quadrature).value;
  const double fm = g(iv.midpoint());
  const double fa = g(iv.a);
  const double fb = g(iv.b);
  switch (classical_id) {
    case TheoremId::hh_classical:
      report.sides = {
          side("f_mid", fm),
          side("integral_mean", mean),
          side("endpoint_avg", 0.5 * (fa + fb)),
      };
      annotate(report, g, std::nullopt, nullptr, opt);
      break;
    case TheoremId::q_classical:
      report.sides = {
          side("f_mid", fm),
          side("q_bound", 4.0 * mean),
      };
      annotate(report, g, std::nullopt, nullptr, opt);
      break;
    case TheoremId::p_classical:
      report.sides = {
          side("f_mid", fm),
          side("p_mean", 2.0 * mean),
          side("p_bound", 2.0 * (fa + fb)),
      };
      annotate(report, g, std::nullopt, nullptr, opt);
      break;
    case TheoremId::r_classical: {
      const double r = extras.r.value_or(1.0);
      if (!(r > 0.0 && r <= 1.0)) {
        throw std::invalid_argument("the r-convex chains require r in (0, 1]");
      }
      report.inputs.r = r;
      if (!(fa > 0.0 && fb > 0.0)) {
        throw std::domain_error(
            "the r-convex chain needs strictly positive endpoint values");
      }
      // (r/(r+1))^(1/r) (f(a)^r + f(b)^r)^(1/r) in log space.
      const double inner = std::log(r / (r + 1.0)) +
                           log_sum_exp(r * std::log(fa), r * std::log(fb));
      report.sides = {
          side("r_mean", mean),
          side("r_bound", std::exp(inner / r)),
      };
      annotate(report, g, r, nullptr, opt);
      break;
    }
    case TheoremId::h_classical: {
      const HFunction h = extras.h.value_or(HFunction::identity());
      report.inputs.h_id = h.id();
      const double h_half = h.at_half();
      if (!(h_half > 0.0)) {
        throw std::domain_error("h(1/2) must be positive");
      }
      report.sides = {
          side("h_lower", fm / (2.0 * h_half)),
          side("integral_mean", mean),
          side("h_bound", (fa + fb) * h.unit_integral()),
      };
      annotate(report, g, std::nullopt, &h, opt);
      break;
    }
    default:
      throw std::invalid_argument("unknown classical chain id");
  }
  finalize(report, opt);
  return report;
}

BoundReport eval_theorem(TheoremId id, const FunctionSpec& f,
                         const Interval& iv, FracOrder alpha,
                         const Extras& extras, const EvalOptions& opt) {
  switch (id) {
    case TheoremId::hh_fractional:
      return eval_hh_fractional(f, iv, alpha, opt);
    case TheoremId::q_fractional:
      return eval_q_fractional(f, iv, alpha, opt);
    case TheoremId::p_fractional:
      return eval_p_fractional(f, iv, alpha, opt);
    case TheoremId::r_fractional:
      if (!extras.r) {
        throw std::invalid_argument("r_fractional requires extras.r");
      }
      return eval_r_fractional(f, iv, alpha, *extras.r, opt);
    case TheoremId::h_fractional:
      return eval_h_fractional(f, extras.h.value_or(HFunction::identity()),
                               iv, alpha, opt);
    default:
      return eval_classical_baseline(f, iv, id, extras, opt);
  }
}

namespace {

std::vector<Side> scaled_sides(const BoundReport& report, double factor) {
  std::vector<Side> out = report.sides;
  for (Side& s : out) {
    s.value *= factor;
  }
  return out;
}

double max_abs_side(const std::vector<Side>& sides) {
  double m = 0.0;
  for (const Side& s : sides) {
    m = std::max(m, std::abs(s.value));
  }
  return m;
}

void complete_entry(ReductionEntry& entry) {
  entry.abs_diff.clear();
  const std::size_t n =
      std::min(entry.from_sides.size(), entry.target_sides.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    entry.abs_diff.push_back(
        std::abs(entry.from_sides[i].value - entry.target_sides[i].value));
    worst = std::max(worst, entry.abs_diff.back());
  }
  entry.tolerance =
      kReductionTolScale * std::max(1.0, max_abs_side(entry.target_sides));
  entry.identical = worst <= entry.tolerance;
}

}  // namespace

ReductionReport check_reductions(const FunctionSpec& f, const Interval& iv,
                                 const Extras& extras, const EvalOptions& opt) {
  EvalOptions relaxed = opt;
  relaxed.strict_preconditions = false;
  relaxed.check_membership = false;

  ReductionReport report;
  report.function_id = f.id();
  report.a = iv.a;
  report.b = iv.b;

  const FracOrder one(1.0);
  const double r = extras.r.value_or(1.0);
  const HFunction h = extras.h.value_or(HFunction::identity());
  const double alpha_star = extras.alpha.value_or(1.0);

  const auto add_identity = [&](TheoremId from, TheoremId target,
                                double alpha, double normalization,
                                auto&& eval_from, auto&& eval_target,
                                std::vector<std::string> notes) {
    ReductionEntry entry;
    entry.from = from;
    entry.target = target;
    entry.alpha = alpha;
    entry.normalization = normalization;
    entry.notes = std::move(notes);
    try {
      const BoundReport from_report = eval_from();
      const BoundReport target_report = eval_target();
      entry.from_sides = scaled_sides(from_report, normalization);
      entry.target_sides = target_report.sides;
      complete_entry(entry);
    } catch (const std::domain_error& e) {
      entry.skipped = true;
      entry.notes.push_back(e.what());
    }
    report.entries.push_back(std::move(entry));
  };

  add_identity(
      TheoremId::hh_fractional, TheoremId::hh_classical, 1.0, 1.0,
      [&] { return eval_hh_fractional(f, iv, one, relaxed); },
      [&] {
        return eval_classical_baseline(f, iv, TheoremId::hh_classical, extras,
                                       relaxed);
      },
      {});
  add_identity(
      TheoremId::q_fractional, TheoremId::q_classical, 1.0, 1.0,
      [&] { return eval_q_fractional(f, iv, one, relaxed); },
      [&] {
        return eval_classical_baseline(f, iv, TheoremId::q_classical, extras,
                                       relaxed);
      },
      {});
  add_identity(
      TheoremId::p_fractional, TheoremId::p_classical, 1.0, 1.0,
      [&] { return eval_p_fractional(f, iv, one, relaxed); },
      [&] {
        return eval_classical_baseline(f, iv, TheoremId::p_classical, extras,
                                       relaxed);
      },
      {});

  {
    Extras with_h = extras;
    with_h.h = h;
    add_identity(
        TheoremId::h_fractional, TheoremId::h_classical, 1.0, 0.5,
        [&] { return eval_h_fractional(f, h, iv, one, relaxed); },
        [&] {
          return eval_classical_baseline(f, iv, TheoremId::h_classical,
                                         with_h, relaxed);
        },
        {"fractional sides scaled by 1/2 (the h-chain keeps Gamma(alpha))"});
    report.entries.back().h_id = h.id();
  }

  add_identity(
      TheoremId::h_fractional, TheoremId::hh_fractional, alpha_star,
      0.5 * alpha_star,
      [&] {
        return eval_h_fractional(f, HFunction::identity(), iv,
                                 FracOrder(alpha_star), relaxed);
      },
      [&] { return eval_hh_fractional(f, iv, FracOrder(alpha_star), relaxed); },
      {"h = identity cross-check: h-chain sides scaled by alpha/2 must "
       "reproduce the convex fractional chain"});
  report.entries.back().h_id = HFunction::identity().id();

  {
    ReductionEntry entry;
    entry.from = TheoremId::r_fractional;
    entry.target = TheoremId::r_classical;
    entry.alpha = 1.0;
    entry.r = r;
    entry.normalization = 0.5;
    entry.expect_identical = false;
    entry.notes.push_back(
        "bound-side weights (1/(alpha+1/r))^r and Beta(alpha,(r+1)/r)^r do "
        "not collapse to the classical power-mean weight for r < 1; bound "
        "sides are compared by ordering (fractional >= classical), means by "
        "identity");
    try {
      Extras with_r = extras;
      with_r.r = r;
      const BoundReport from_report =
          eval_r_fractional(f, iv, one, r, relaxed);
      const BoundReport target_report = eval_classical_baseline(
          f, iv, TheoremId::r_classical, with_r, relaxed);
      entry.from_sides = scaled_sides(from_report, 0.5);
      entry.target_sides = target_report.sides;
      complete_entry(entry);
      entry.ordering_ok =
          entry.abs_diff.front() <= entry.tolerance &&
          entry.from_sides.back().value >=
              entry.target_sides.back().value - entry.tolerance;
    } catch (const std::domain_error& e) {
      entry.skipped = true;
      entry.notes.push_back(e.what());
    }
    report.entries.push_back(std::move(entry));
  }

  report.all_ok = true;
  for (const ReductionEntry& entry : report.entries) {
    if (entry.skipped) {
      continue;
    }
    const bool ok = entry.expect_identical ? entry.identical : entry.ordering_ok;
    report.all_ok = report.all_ok && ok;
  }
  return report;
}

namespace {

std::string quad_id(double u, double c, double v) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "quad:u=%.6g,c=%.6g,v=%.6g", u, c, v);
  return buf;
}

FunctionSpec make_quadratic(double u, double c, double v,
                            const Interval& domain) {
  return FunctionSpec::custom(
      quad_id(u, c, v),
      [u, c, v](double x) { return u * (x - c) * (x - c) + v; }, domain);
}

}  // namespace

FalsifyOutcome falsify(const FalsifyConfig& config) {
  if (config.trials < 1) {
    throw std::invalid_argument("falsify requires trials >= 1");
  }
  const bool in_class = config.generator == "in-class";
  const bool concave = config.generator == "concave";
  const bool negative = config.generator == "negative";
  if (!in_class && !concave && !negative) {
    throw std::invalid_argument("unknown falsification generator '" +
                                config.generator + "'");
  }

  EvalOptions opt = config.options;
  opt.strict_preconditions = false;
  opt.check_membership = true;

  FalsifyOutcome outcome;
  outcome.theorem = config.theorem;
  outcome.generator = config.generator;
  outcome.seed = config.seed;
  if (in_class) {
    outcome.expectation = "in-class cases produce no findings";
  } else if (concave) {
    outcome.expectation = "at least one chain violation";
  } else {
    outcome.expectation = "at least one violation or precondition failure";
  }

  static const double kAlphaPool[] = {0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0};
  static const double kRPool[] = {0.25, 0.5, 0.75, 1.0};
  const bool wants_r = needs_r(config.theorem);
  const bool wants_h = needs_h(config.theorem);

  std::mt19937_64 rng(config.seed);
  for (int trial = 0; trial < config.trials; ++trial) {
    const std::uint64_t alpha_raw = rng();
    double alpha = kAlphaPool[alpha_raw % 7];

    FunctionSpec f = FunctionSpec::constant(1.0, Interval{0.0, 1.0});
    Extras extras;
    if (in_class) {
      if (wants_r) {
        // Positive log-affine functions are r-convex for every r in [0, 1].
        const double c0 = 0.5 + 1.5 * uniform01(rng());
        const double k = -2.0 + 4.0 * uniform01(rng());
        const double a0 = 2.0 * uniform01(rng());
        const double len = 0.5 + 1.5 * uniform01(rng());
        extras.r = kRPool[static_cast<std::size_t>(4.0 * uniform01(rng())) % 4];
        f = FunctionSpec::exponential(c0, k, Interval{a0, a0 + len});
      } else {
        // Nonnegative convex parabolas sit in every class on offer.
        const double a0 = 2.0 * uniform01(rng());
        const double len = 0.5 + 1.5 * uniform01(rng());
        const double u = 0.25 + 3.75 * uniform01(rng());
        const double c = a0 + len * uniform01(rng());
        const double v = 2.0 * uniform01(rng());
        f = make_quadratic(u, c, v, Interval{a0, a0 + len});
        if (wants_h) {
          const std::size_t pick =
              static_cast<std::size_t>(3.0 * uniform01(rng())) % 3;
          const double s = 0.25 + 0.5 * uniform01(rng());
          if (pick == 0) {
            extras.h = HFunction::identity();
          } else if (pick == 1) {
            extras.h = HFunction::constant();
          } else {
            extras.h = HFunction::power(s);
          }
        }
      }
    } else if (concave) {
      // Concave controls break the midpoint side; alpha stays at 1 so the
      // violation is guaranteed, with sqrt(x) on [0, 1] pinned first.
      alpha = 1.0;
      if (trial == 0) {
        f = FunctionSpec::sqrt_root(Interval{0.0, 1.0});
      } else {
        const double scale = 0.5 + 1.5 * uniform01(rng());
        const double shift = 0.1 + uniform01(rng());
        const double len = 1.0 + uniform01(rng());
        f = FunctionSpec::sqrt_root(Interval{0.0, len}, scale, shift);
      }
      if (wants_r) {
        extras.r = 1.0;
      }
      if (wants_h) {
        extras.h = HFunction::identity();
      }
    } else {
      // Affine functions dipping below zero: convex, but outside every
      // nonnegativity-constrained class.
      const double drop = 1.0 + 4.0 * uniform01(rng());
      f = FunctionSpec::affine(-drop, 1.0, Interval{0.0, 1.0});
      if (wants_r) {
        extras.r = 1.0;
      }
      if (wants_h) {
        extras.h = HFunction::identity();
      }
    }

    FalsifyCase item;
    try {
      BoundReport report = eval_theorem(config.theorem, f, f.domain(),
                                        FracOrder(alpha), extras, opt);
      item.violation = !report.satisfied;
      item.finding = min_margin(report) < -10.0 * report.tolerance;
      item.precondition_failure = !report.preconditions_met;
      item.report = std::move(report);
    } catch (const EvaluationError& e) {
      item.error = e.what();
    } catch (const std::domain_error& e) {
      item.error = e.what();
      item.precondition_failure = true;
    }
    outcome.violations += item.violation ? 1 : 0;
    outcome.findings += item.finding ? 1 : 0;
    outcome.precondition_failures += item.precondition_failure ? 1 : 0;
    outcome.cases.push_back(std::move(item));
  }

  if (in_class) {
    outcome.expectation_met = outcome.findings == 0;
  } else if (concave) {
    outcome.expectation_met = outcome.violations >= 1;
  } else {
    outcome.expectation_met =
        outcome.violations + outcome.precondition_failures >= 1;
  }
  return outcome;
}

}  // namespace hhfrac
