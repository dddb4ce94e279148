#include "hhfrac/function_classes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <tuple>
#include <utility>

namespace hhfrac {

namespace {

std::string format_param(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

[[noreturn]] void bad_spec(const std::string& text, const std::string& why) {
  throw std::invalid_argument("cannot parse function spec '" + text +
                              "': " + why);
}

// "k=2,scale=3" -> {k: 2, scale: 3}; duplicate or malformed keys rejected.
std::map<std::string, double> parse_params(const std::string& text,
                                           const std::string& params) {
  std::map<std::string, double> kv;
  if (params.empty()) {
    return kv;
  }
  std::size_t pos = 0;
  while (pos <= params.size()) {
    const std::size_t comma = params.find(',', pos);
    const std::string item = params.substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos);
    const std::size_t eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      bad_spec(text, "expected key=value, got '" + item + "'");
    }
    const std::string key = item.substr(0, eq);
    const std::string val = item.substr(eq + 1);
    try {
      std::size_t used = 0;
      const double num = std::stod(val, &used);
      if (used != val.size()) {
        bad_spec(text, "trailing characters in value '" + val + "'");
      }
      if (!kv.emplace(key, num).second) {
        bad_spec(text, "duplicate parameter '" + key + "'");
      }
    } catch (const std::invalid_argument&) {
      bad_spec(text, "non-numeric value '" + val + "'");
    } catch (const std::out_of_range&) {
      bad_spec(text, "value out of range '" + val + "'");
    }
    if (comma == std::string::npos) {
      break;
    }
    pos = comma + 1;
  }
  return kv;
}

double take_param(std::map<std::string, double>& kv, const std::string& key,
                  double fallback) {
  const auto it = kv.find(key);
  if (it == kv.end()) {
    return fallback;
  }
  const double v = it->second;
  kv.erase(it);
  return v;
}

void require_no_leftovers(const std::string& text,
                          const std::map<std::string, double>& kv) {
  if (!kv.empty()) {
    bad_spec(text, "unknown parameter '" + kv.begin()->first + "'");
  }
}

}  // namespace

FunctionSpec::FunctionSpec(Family family, std::string id,
                           const Interval& domain)
    : family_(family), id_(std::move(id)), domain_(domain) {}

FunctionSpec FunctionSpec::affine(double c0, double c1,
                                  const Interval& domain) {
  FunctionSpec f(Family::affine,
                 "affine:c0=" + format_param(c0) + ",c1=" + format_param(c1),
                 domain);
  f.p0_ = c0;
  f.p1_ = c1;
  return f;
}

FunctionSpec FunctionSpec::constant(double c, const Interval& domain) {
  FunctionSpec f(Family::affine, "const:c=" + format_param(c), domain);
  f.p0_ = c;
  f.p1_ = 0.0;
  return f;
}

FunctionSpec FunctionSpec::monomial(double k, const Interval& domain,
                                    double scale, double shift) {
  if (!std::isfinite(k)) {
    throw std::invalid_argument("monomial exponent must be finite");
  }
  std::string id = "monomial:k=" + format_param(k);
  if (scale != 1.0) id += ",scale=" + format_param(scale);
  if (shift != 0.0) id += ",shift=" + format_param(shift);
  FunctionSpec f(Family::monomial, id, domain);
  f.p0_ = k;
  f.scale_ = scale;
  f.shift_ = shift;
  if (!f.admits(domain)) {
    throw std::domain_error("monomial k=" + format_param(k) +
                            " is not defined on the requested interval");
  }
  return f;
}

FunctionSpec FunctionSpec::exponential(double c, double k,
                                       const Interval& domain) {
  FunctionSpec f(Family::exponential,
                 "exp:c=" + format_param(c) + ",k=" + format_param(k), domain);
  f.p0_ = c;
  f.p1_ = k;
  return f;
}

FunctionSpec FunctionSpec::reciprocal(const Interval& domain, double scale) {
  std::string id = "recip";
  if (scale != 1.0) id += ":scale=" + format_param(scale);
  FunctionSpec f(Family::reciprocal, id, domain);
  f.scale_ = scale;
  if (!f.admits(domain)) {
    throw std::domain_error("recip requires an interval with a > 0");
  }
  return f;
}

FunctionSpec FunctionSpec::abs_power(double p, const Interval& domain,
                                     double scale, double shift) {
  if (!std::isfinite(p) || !(p > 0.0)) {
    throw std::invalid_argument("abspow exponent must be finite and > 0");
  }
  std::string id = "abspow:p=" + format_param(p);
  if (scale != 1.0) id += ",scale=" + format_param(scale);
  if (shift != 0.0) id += ",shift=" + format_param(shift);
  FunctionSpec f(Family::abs_power, id, domain);
  f.p0_ = p;
  f.scale_ = scale;
  f.shift_ = shift;
  return f;
}

FunctionSpec FunctionSpec::sqrt_root(const Interval& domain, double scale,
                                     double shift) {
  std::string id = "sqrt";
  if (scale != 1.0 || shift != 0.0) {
    id += ":scale=" + format_param(scale);
    if (shift != 0.0) id += ",shift=" + format_param(shift);
  }
  FunctionSpec f(Family::sqrt_root, id, domain);
  f.scale_ = scale;
  f.shift_ = shift;
  if (!f.admits(domain)) {
    throw std::domain_error("sqrt requires an interval with a >= 0");
  }
  return f;
}

FunctionSpec FunctionSpec::custom(std::string id, RealFn fn,
                                  const Interval& domain) {
  if (!fn) {
    throw std::invalid_argument("custom function requires a callable");
  }
  FunctionSpec f(Family::custom, std::move(id), domain);
  f.fn_ = std::move(fn);
  return f;
}

FunctionSpec FunctionSpec::parse(const std::string& text,
                                 const Interval& domain) {
  const std::size_t colon = text.find(':');
  const std::string family = text.substr(0, colon);
  const std::string params =
      colon == std::string::npos ? "" : text.substr(colon + 1);
  auto kv = parse_params(text, params);

  if (family == "monomial") {
    if (kv.find("k") == kv.end()) bad_spec(text, "monomial requires k=");
    const double k = take_param(kv, "k", 0.0);
    const double scale = take_param(kv, "scale", 1.0);
    const double shift = take_param(kv, "shift", 0.0);
    require_no_leftovers(text, kv);
    return monomial(k, domain, scale, shift);
  }
  if (family == "affine") {
    const double c0 = take_param(kv, "c0", 0.0);
    const double c1 = take_param(kv, "c1", 1.0);
    require_no_leftovers(text, kv);
    return affine(c0, c1, domain);
  }
  if (family == "const") {
    const double c = take_param(kv, "c", 1.0);
    require_no_leftovers(text, kv);
    return constant(c, domain);
  }
  if (family == "exp") {
    const double c = take_param(kv, "c", 1.0);
    const double k = take_param(kv, "k", 1.0);
    require_no_leftovers(text, kv);
    return exponential(c, k, domain);
  }
  if (family == "recip") {
    const double scale = take_param(kv, "scale", 1.0);
    require_no_leftovers(text, kv);
    return reciprocal(domain, scale);
  }
  if (family == "sqrt") {
    const double scale = take_param(kv, "scale", 1.0);
    const double shift = take_param(kv, "shift", 0.0);
    require_no_leftovers(text, kv);
    return sqrt_root(domain, scale, shift);
  }
  if (family == "abspow") {
    if (kv.find("p") == kv.end()) bad_spec(text, "abspow requires p=");
    const double p = take_param(kv, "p", 0.0);
    const double scale = take_param(kv, "scale", 1.0);
    const double shift = take_param(kv, "shift", 0.0);
    require_no_leftovers(text, kv);
    return abs_power(p, domain, scale, shift);
  }
  bad_spec(text, "unknown family '" + family + "'");
}

double FunctionSpec::operator()(double x) const {
  if (!domain_.contains(x)) {
    std::ostringstream msg;
    msg << id_ << " evaluated outside its domain [" << domain_.a << ", "
        << domain_.b << "] at x = " << x;
    throw EvaluationError(msg.str(), x);
  }
  double v = 0.0;
  switch (family_) {
    case Family::affine:
      v = p0_ + p1_ * x;
      break;
    case Family::monomial:
      v = scale_ * std::pow(x, p0_) + shift_;
      break;
    case Family::exponential:
      v = p0_ * std::exp(p1_ * x);
      break;
    case Family::reciprocal:
      v = scale_ / x;
      break;
    case Family::abs_power:
      v = scale_ * std::pow(std::abs(x), p0_) + shift_;
      break;
    case Family::sqrt_root:
      v = scale_ * std::sqrt(x) + shift_;
      break;
    case Family::custom:
      v = fn_(x);
      break;
  }
  if (!std::isfinite(v)) {
    std::ostringstream msg;
    msg << id_ << " produced a non-finite value at x = " << x;
    throw EvaluationError(msg.str(), x);
  }
  return v;
}

RealFn FunctionSpec::as_fn() const {
  return [copy = *this](double x) { return copy(x); };
}

bool FunctionSpec::admits(const Interval& iv) const {
  switch (family_) {
    case Family::monomial: {
      const double k = p0_;
      const bool integer_k = k == std::floor(k);
      if (integer_k && k >= 0.0) return true;
      if (k >= 0.0) return iv.a >= 0.0;  // fractional power
      return iv.a > 0.0;                 // negative power
    }
    case Family::reciprocal:
      return iv.a > 0.0;
    case Family::sqrt_root:
      return iv.a >= 0.0;
    default:
      return true;
  }
}

FunctionSpec FunctionSpec::on(const Interval& iv) const {
  if (!admits(iv)) {
    std::ostringstream msg;
    msg << id_ << " is not defined on [" << iv.a << ", " << iv.b << "]";
    throw std::domain_error(msg.str());
  }
  FunctionSpec copy = *this;
  copy.domain_ = iv;
  return copy;
}

bool FunctionSpec::claims(const std::string& class_id) const {
  for (const auto& c : claims_) {
    if (c == class_id) return true;
  }
  return false;
}

FunctionSpec& FunctionSpec::claim(std::vector<std::string> class_ids) {
  claims_ = std::move(class_ids);
  return *this;
}

HFunction::HFunction(Family family, double s, std::string id)
    : family_(family), s_(s), id_(std::move(id)) {}

HFunction HFunction::identity() {
  return HFunction(Family::identity, 0.0, "identity");
}

HFunction HFunction::constant() {
  return HFunction(Family::constant, 0.0, "const");
}

HFunction HFunction::reciprocal() {
  return HFunction(Family::reciprocal, 0.0, "recip");
}

HFunction HFunction::power(double s) {
  if (!std::isfinite(s) || !(s > 0.0) || !(s < 1.0)) {
    throw std::invalid_argument("power h-function requires s in (0, 1)");
  }
  return HFunction(Family::power, s, "power:s=" + format_param(s));
}

HFunction HFunction::parse(const std::string& text) {
  if (text == "identity") return identity();
  if (text == "const") return constant();
  if (text == "recip") return reciprocal();
  const std::string prefix = "power:s=";
  if (text.rfind(prefix, 0) == 0) {
    const std::string val = text.substr(prefix.size());
    try {
      std::size_t used = 0;
      const double s = std::stod(val, &used);
      if (used != val.size()) throw std::invalid_argument(val);
      return power(s);
    } catch (const std::out_of_range&) {
      throw std::invalid_argument("h-function exponent out of range: " + text);
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("cannot parse h-function '" + text + "'");
    }
  }
  throw std::invalid_argument(
      "cannot parse h-function '" + text +
      "'; expected identity | const | recip | power:s=<real in (0,1)>");
}

double HFunction::operator()(double lam) const {
  if (!(lam > 0.0) || !(lam < 1.0)) {
    std::ostringstream msg;
    msg << "h-function argument must lie in (0, 1), got " << lam;
    throw std::domain_error(msg.str());
  }
  switch (family_) {
    case Family::identity:
      return lam;
    case Family::constant:
      return 1.0;
    case Family::reciprocal:
      return 1.0 / lam;
    case Family::power:
      return std::pow(lam, s_);
  }
  return 0.0;  // unreachable
}

double HFunction::at_half() const { return (*this)(0.5); }

bool HFunction::moment_admissible() const {
  return family_ != Family::reciprocal;
}

double HFunction::unit_integral() const {
  switch (family_) {
    case Family::identity:
      return 0.5;
    case Family::constant:
      return 1.0;
    case Family::power:
      return 1.0 / (s_ + 1.0);
    case Family::reciprocal:
      throw std::domain_error(
          "the integral of 1/lambda over (0,1) diverges; the reciprocal "
          "h-function has no finite unit integral");
  }
  return 0.0;  // unreachable
}

void validate(const SamplingPlan& plan) {
  if (plan.lambda_grid < 2 || plan.point_grid < 2) {
    throw std::invalid_argument("sampling plan grids need at least 2 points");
  }
  if (plan.random_triples < 0) {
    throw std::invalid_argument("random_triples must be >= 0");
  }
  if (!(plan.membership_tol > 0.0)) {
    throw std::invalid_argument("membership_tol must be > 0");
  }
  if (!(plan.open_margin > 0.0) || !(plan.open_margin < 0.5)) {
    throw std::invalid_argument("open_margin must lie in (0, 0.5)");
  }
}

double uniform01(std::uint64_t raw) {
  return static_cast<double>(raw >> 11) * 0x1.0p-53;
}

namespace {

struct ScanState {
  double worst = std::numeric_limits<double>::infinity();
  MembershipWitness witness;
  long used = 0;

  void feed(double slack, double x, double y, double lam) {
    ++used;
    if (slack < worst ||
        (slack == worst && std::tie(x, y, lam) < std::tie(witness.x, witness.y,
                                                          witness.lambda))) {
      worst = slack;
      witness = {x, y, lam};
    }
  }
};

struct CheckShape {
  bool open_lambda = false;
  bool nonneg_scan = false;
  bool positive_required = false;
};

// Shared scaffold: closed or margin-clipped lambda grid x point grid, then
// seeded random triples drawn in the fixed order (x, y, lambda). Every
// function evaluation flows through one checkpoint so the positivity and
// nonnegativity policies see exactly the sampled set.
template <typename Slack>
MembershipReport scan_membership(const FunctionSpec& f,
                                 const SamplingPlan& plan,
                                 std::string class_id, const CheckShape& shape,
                                 Slack&& slack) {
  validate(plan);
  const Interval& dom = f.domain();
  const double len = dom.length();
  ScanState st;

  auto eval_checked = [&](double x) {
    const double v = f(x);
    if (shape.positive_required && !(v > 0.0)) {
      std::ostringstream msg;
      msg << class_id << " membership requires strictly positive values; "
          << f.id() << "(" << x << ") = " << v;
      throw std::domain_error(msg.str());
    }
    if (shape.nonneg_scan) {
      st.feed(v, x, x, 0.0);
    }
    return v;
  };

  auto lambda_of = [&](double t) {
    return shape.open_lambda
               ? plan.open_margin + (1.0 - 2.0 * plan.open_margin) * t
               : t;
  };

  std::vector<double> lambdas(plan.lambda_grid);
  for (int i = 0; i < plan.lambda_grid; ++i) {
    lambdas[i] = lambda_of(static_cast<double>(i) / (plan.lambda_grid - 1));
  }
  // All sampled abscissas are clamped into the domain: a + len * t and
  // convex mixes can land one ulp past an endpoint on intervals whose
  // bounds are not exactly representable sums.
  auto inside = [&](double x) { return std::clamp(x, dom.a, dom.b); };

  std::vector<double> xs(plan.point_grid);
  std::vector<double> fxs(plan.point_grid);
  for (int j = 0; j < plan.point_grid; ++j) {
    xs[j] = j == plan.point_grid - 1
                ? dom.b
                : inside(dom.a +
                         len * static_cast<double>(j) / (plan.point_grid - 1));
    fxs[j] = eval_checked(xs[j]);
  }

  for (int jx = 0; jx < plan.point_grid; ++jx) {
    for (int jy = 0; jy < plan.point_grid; ++jy) {
      for (const double lam : lambdas) {
        const double mix = inside(lam * xs[jx] + (1.0 - lam) * xs[jy]);
        const double fmix = eval_checked(mix);
        st.feed(slack(fxs[jx], fxs[jy], fmix, lam), xs[jx], xs[jy], lam);
      }
    }
  }

  std::mt19937_64 rng(plan.seed);
  for (int t = 0; t < plan.random_triples; ++t) {
    const double x = inside(dom.a + len * uniform01(rng()));
    const double y = inside(dom.a + len * uniform01(rng()));
    const double lam = lambda_of(uniform01(rng()));
    const double fx = eval_checked(x);
    const double fy = eval_checked(y);
    const double fmix = eval_checked(inside(lam * x + (1.0 - lam) * y));
    st.feed(slack(fx, fy, fmix, lam), x, y, lam);
  }

  MembershipReport report;
  report.class_id = std::move(class_id);
  report.function_id = f.id();
  report.samples_used = st.used;
  report.worst_margin = st.worst;
  report.witness = st.witness;
  report.tolerance = plan.membership_tol;
  report.pass = st.worst >= -plan.membership_tol;
  return report;
}

}  // namespace

MembershipReport check_convex(const FunctionSpec& f, const SamplingPlan& plan) {
  CheckShape shape;
  return scan_membership(
      f, plan, "convex", shape,
      [](double fx, double fy, double fmix, double lam) {
        return lam * fx + (1.0 - lam) * fy - fmix;
      });
}

MembershipReport check_godunova_levin(const FunctionSpec& f,
                                      const SamplingPlan& plan) {
  CheckShape shape;
  shape.open_lambda = true;
  shape.nonneg_scan = true;
  return scan_membership(
      f, plan, "godunova_levin", shape,
      [](double fx, double fy, double fmix, double lam) {
        return fx / lam + fy / (1.0 - lam) - fmix;
      });
}

MembershipReport check_p_function(const FunctionSpec& f,
                                  const SamplingPlan& plan) {
  CheckShape shape;
  shape.nonneg_scan = true;
  return scan_membership(f, plan, "p_function", shape,
                         [](double fx, double fy, double fmix, double) {
                           return fx + fy - fmix;
                         });
}

MembershipReport check_r_convex(const FunctionSpec& f, double r,
                                const SamplingPlan& plan) {
  if (!std::isfinite(r) || r < 0.0 || r > 1.0) {
    throw std::invalid_argument("r-convex membership expects r in [0, 1]");
  }
  CheckShape shape;
  shape.positive_required = true;
  return scan_membership(
      f, plan, "r_convex:r=" + format_param(r), shape,
      [r](double fx, double fy, double fmix, double lam) {
        return power_mean(fx, fy, lam, r) - fmix;
      });
}

MembershipReport check_h_convex(const FunctionSpec& f, const HFunction& h,
                                const SamplingPlan& plan) {
  CheckShape shape;
  shape.open_lambda = true;
  shape.nonneg_scan = true;
  return scan_membership(
      f, plan, "h_convex:" + h.id(), shape,
      [&h](double fx, double fy, double fmix, double lam) {
        return h(lam) * fx + h(1.0 - lam) * fy - fmix;
      });
}

double godunova_levin_triple(const FunctionSpec& f, double x, double y,
                             double z) {
  if (x == y || y == z || x == z) {
    throw std::domain_error(
        "the cubic combination requires pairwise distinct points");
  }
  return f(x) * (x - y) * (x - z) + f(y) * (y - x) * (y - z) +
         f(z) * (z - x) * (z - y);
}

double power_mean(double x, double y, double lambda, double r) {
  if (!std::isfinite(x) || !std::isfinite(y) || !(x > 0.0) || !(y > 0.0)) {
    std::ostringstream msg;
    msg << "power mean requires positive arguments, got x = " << x
        << ", y = " << y;
    throw std::domain_error(msg.str());
  }
  if (!(lambda >= 0.0) || !(lambda <= 1.0)) {
    std::ostringstream msg;
    msg << "power mean weight must lie in [0, 1], got " << lambda;
    throw std::domain_error(msg.str());
  }
  if (r == 0.0) {
    return std::pow(x, lambda) * std::pow(y, 1.0 - lambda);
  }
  // (lam x^r + (1-lam) y^r)^(1/r) evaluated as expm1/log1p around 1 so the
  // value varies continuously into the geometric branch as r -> 0.
  const double ex = std::expm1(r * std::log(x));
  const double ey = std::expm1(r * std::log(y));
  return std::exp(std::log1p(lambda * ex + (1.0 - lambda) * ey) / r);
}

std::vector<FunctionSpec> default_corpus() {
  const Interval unit(0.0, 1.0);
  const Interval one_two(1.0, 2.0);
  std::vector<FunctionSpec> corpus;

  corpus.push_back(FunctionSpec::monomial(2.0, unit).claim(
      {"convex", "godunova_levin", "p_function", "h_convex:identity",
       "h_convex:const", "h_convex:power:s=0.5"}));
  corpus.push_back(FunctionSpec::monomial(1.0, unit).claim(
      {"convex", "godunova_levin", "p_function", "h_convex:identity",
       "h_convex:const", "h_convex:power:s=0.5"}));
  corpus.push_back(FunctionSpec::exponential(1.0, 1.0, unit).claim(
      {"convex", "godunova_levin", "p_function", "r_convex",
       "h_convex:identity", "h_convex:const", "h_convex:power:s=0.5"}));
  corpus.push_back(FunctionSpec::reciprocal(one_two).claim(
      {"convex", "godunova_levin", "p_function", "r_convex",
       "h_convex:identity", "h_convex:const", "h_convex:power:s=0.5"}));
  corpus.push_back(FunctionSpec::abs_power(1.5, unit).claim(
      {"convex", "godunova_levin", "p_function", "h_convex:identity",
       "h_convex:const", "h_convex:power:s=0.5"}));
  // Concave control: in Q and P but not convex, so it exercises the bounds
  // that hold for the wider classes while falsifying the convex-only ones.
  corpus.push_back(FunctionSpec::sqrt_root(unit).claim(
      {"godunova_levin", "p_function", "h_convex:const",
       "h_convex:power:s=0.5"}));
  corpus.push_back(FunctionSpec::constant(1.0, unit).claim(
      {"convex", "godunova_levin", "p_function", "r_convex",
       "h_convex:identity", "h_convex:const", "h_convex:power:s=0.5"}));
  return corpus;
}

}  // namespace hhfrac
