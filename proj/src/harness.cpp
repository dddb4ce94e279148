#include "hhfrac/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <sstream>
#include <utility>

#include "json.hpp"

namespace hhfrac {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string format17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string utc_timestamp() {
  const std::time_t tt =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string join_notes(const std::vector<std::string>& notes) {
  std::string out;
  for (const std::string& n : notes) {
    if (!out.empty()) {
      out += "; ";
    }
    out += n;
  }
  return out;
}

// One evaluated chain as a flat record: scalar fields only, so the JSON and
// CSV emissions carry exactly the same columns.
ordered_json report_row(const BoundReport& rep) {
  ordered_json row;
  row["theorem"] = to_string(rep.theorem);
  row["function"] = rep.inputs.function_id;
  row["a"] = rep.inputs.a;
  row["b"] = rep.inputs.b;
  row["alpha"] = rep.inputs.alpha;
  if (rep.inputs.r) {
    row["r"] = *rep.inputs.r;
  }
  if (rep.inputs.h_id) {
    row["h"] = *rep.inputs.h_id;
  }
  for (std::size_t i = 0; i < rep.sides.size(); ++i) {
    const std::string tag = "side" + std::to_string(i + 1);
    row[tag + "_name"] = rep.sides[i].name;
    row[tag + "_value"] = rep.sides[i].value;
  }
  for (std::size_t i = 0; i < rep.margins.size(); ++i) {
    row["margin" + std::to_string(i + 1)] = rep.margins[i];
  }
  row["min_margin"] = min_margin(rep);
  row["tolerance"] = rep.tolerance;
  row["satisfied"] = rep.satisfied;
  row["preconditions_checked"] = rep.preconditions_checked;
  row["preconditions_met"] = rep.preconditions_met;
  row["skipped"] = false;
  if (!rep.notes.empty()) {
    row["notes"] = join_notes(rep.notes);
  }
  return row;
}

ordered_json skipped_row(TheoremId id, const std::string& function_id,
                         const Interval& iv, double alpha,
                         std::optional<double> r,
                         const std::optional<std::string>& h_id,
                         const std::string& reason) {
  ordered_json row;
  row["theorem"] = to_string(id);
  row["function"] = function_id;
  row["a"] = iv.a;
  row["b"] = iv.b;
  row["alpha"] = alpha;
  if (r) {
    row["r"] = *r;
  }
  if (h_id) {
    row["h"] = *h_id;
  }
  row["skipped"] = true;
  row["reason"] = reason;
  return row;
}

std::string csv_escape(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) {
    return text;
  }
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') {
      out += '"';
    }
    out += c;
  }
  out += '"';
  return out;
}

std::string csv_cell(const ordered_json& value) {
  if (value.is_null()) {
    return "";
  }
  if (value.is_boolean()) {
    return value.get<bool>() ? "true" : "false";
  }
  if (value.is_number_float()) {
    return format17(value.get<double>());
  }
  if (value.is_number_unsigned()) {
    return std::to_string(value.get<std::uint64_t>());
  }
  if (value.is_number_integer()) {
    return std::to_string(value.get<std::int64_t>());
  }
  return csv_escape(value.get<std::string>());
}

std::string render_csv(const std::vector<ordered_json>& rows) {
  std::vector<std::string> header;
  for (const ordered_json& row : rows) {
    for (auto it = row.begin(); it != row.end(); ++it) {
      if (std::find(header.begin(), header.end(), it.key()) == header.end()) {
        header.push_back(it.key());
      }
    }
  }
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    out += (i ? "," : "") + csv_escape(header[i]);
  }
  out += '\n';
  for (const ordered_json& row : rows) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (i) {
        out += ',';
      }
      const auto it = row.find(header[i]);
      if (it != row.end()) {
        out += csv_cell(*it);
      }
    }
    out += '\n';
  }
  return out;
}

struct Resolved {
  std::vector<FunctionSpec> functions;
  std::vector<HFunction> hs;
  EvalOptions options;
};

Resolved resolve(const RunConfig& config) {
  Resolved res;
  try {
    validate(config.quadrature);
    validate(config.sampling);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (config.alphas.empty()) {
    throw ConfigError("alpha grid must be nonempty");
  }
  for (double a : config.alphas) {
    if (!(a > 0.0) || !std::isfinite(a)) {
      throw ConfigError("alpha values must be finite and positive");
    }
  }
  if (config.rs.empty()) {
    throw ConfigError("r grid must be nonempty");
  }
  for (double r : config.rs) {
    if (!(r > 0.0 && r <= 1.0)) {
      throw ConfigError("r values must lie in (0, 1]");
    }
  }
  if (config.hs.empty()) {
    throw ConfigError("h grid must be nonempty");
  }
  for (const std::string& spec : config.hs) {
    try {
      res.hs.push_back(HFunction::parse(spec));
    } catch (const std::exception& e) {
      throw ConfigError(std::string("bad h spec '") + spec + "': " + e.what());
    }
  }
  if (config.mode == RunMode::falsify) {
    if (config.trials < 1) {
      throw ConfigError("falsify requires trials >= 1");
    }
    if (config.generator != "in-class" && config.generator != "concave" &&
        config.generator != "negative") {
      throw ConfigError("unknown generator '" + config.generator +
                        "' (expected in-class, concave, or negative)");
    }
  }
  if (config.functions.empty()) {
    res.functions = default_corpus();
  } else {
    const Interval base =
        config.intervals.empty() ? Interval{} : config.intervals.front();
    for (const std::string& spec : config.functions) {
      try {
        res.functions.push_back(FunctionSpec::parse(spec, base));
      } catch (const std::exception& e) {
        throw ConfigError(std::string("bad function spec '") + spec +
                          "': " + e.what());
      }
    }
  }
  if (config.mode == RunMode::eval && !config.theorem) {
    throw ConfigError("eval mode requires a theorem");
  }
  res.options.quadrature = config.quadrature;
  res.options.sampling = config.sampling;
  res.options.sampling.seed = config.seed;
  res.options.strict_preconditions = config.strict_preconditions;
  res.options.check_membership = true;
  return res;
}

struct ModeResult {
  std::vector<ordered_json> rows;
  ordered_json summary;  // null unless the mode produces one
  long violations = 0;
  long errors = 0;
  long conflicts = 0;       // membership: claimed class failed its check
  bool reductions_ok = true;
  bool expectation_met = true;
};

// Interval resolution shared by the case-grid modes. Returns false (with a
// reason) when f cannot live on the requested interval.
bool scope_case(const FunctionSpec& f, const std::optional<Interval>& iv,
                FunctionSpec& out, Interval& interval, std::string& reason) {
  if (!iv) {
    out = f;
    interval = f.domain();
    return true;
  }
  if (!f.admits(*iv)) {
    reason = "function is not finite on the requested interval";
    interval = *iv;
    return false;
  }
  out = f.on(*iv);
  interval = *iv;
  return true;
}

MembershipReport gate_check(TheoremId id, const FunctionSpec& f,
                            std::optional<double> r, const HFunction* h,
                            const SamplingPlan& plan) {
  switch (id) {
    case TheoremId::hh_classical:
    case TheoremId::hh_fractional:
      return check_convex(f, plan);
    case TheoremId::q_classical:
    case TheoremId::q_fractional:
      return check_godunova_levin(f, plan);
    case TheoremId::p_classical:
    case TheoremId::p_fractional:
      return check_p_function(f, plan);
    case TheoremId::r_classical:
    case TheoremId::r_fractional:
      return check_r_convex(f, r.value(), plan);
    case TheoremId::h_classical:
    case TheoremId::h_fractional:
      return check_h_convex(f, *h, plan);
  }
  throw std::invalid_argument("unknown theorem id");
}

void run_eval(const RunConfig& config, const Resolved& res, ModeResult& out) {
  const TheoremId id = *config.theorem;
  const FunctionSpec& f = res.functions.front();
  const std::optional<Interval> iv =
      config.intervals.empty() ? std::nullopt
                               : std::optional<Interval>(config.intervals[0]);
  FunctionSpec scoped = f;
  Interval interval = f.domain();
  std::string reason;
  if (!scope_case(f, iv, scoped, interval, reason)) {
    throw ConfigError("function '" + f.id() + "': " + reason);
  }
  Extras extras;
  if (needs_r(id)) {
    extras.r = config.rs.front();
  }
  if (needs_h(id)) {
    extras.h = res.hs.front();
  }
  const double alpha = is_fractional(id) ? config.alphas.front() : 1.0;
  try {
    const BoundReport rep = eval_theorem(id, scoped, interval,
                                         FracOrder(alpha), extras, res.options);
    out.rows.push_back(report_row(rep));
    out.violations += rep.satisfied ? 0 : 1;
  } catch (const std::exception& e) {
    ordered_json row = skipped_row(id, scoped.id(), interval, alpha, extras.r,
                                   extras.h ? std::optional<std::string>(
                                                  extras.h->id())
                                            : std::nullopt,
                                   "");
    row.erase("skipped");
    row.erase("reason");
    row["error"] = e.what();
    out.rows.push_back(std::move(row));
    ++out.errors;
  }
}

void run_sweep(const RunConfig& config, const Resolved& res, ModeResult& out) {
  std::vector<TheoremId> theorems;
  if (config.theorem) {
    theorems.push_back(*config.theorem);
  } else {
    theorems = fractional_theorems();
  }
  std::vector<std::optional<Interval>> intervals;
  if (config.intervals.empty()) {
    intervals.push_back(std::nullopt);
  } else {
    for (const Interval& iv : config.intervals) {
      intervals.emplace_back(iv);
    }
  }
  EvalOptions gated = res.options;
  gated.check_membership = false;  // the sweep gate samples first

  for (TheoremId id : theorems) {
    const std::vector<double> alphas =
        is_fractional(id) ? config.alphas : std::vector<double>{1.0};
    const std::vector<double> rs =
        needs_r(id) ? config.rs : std::vector<double>{0.0};
    const std::size_t h_count = needs_h(id) ? res.hs.size() : 1;
    for (const FunctionSpec& f : res.functions) {
      for (const std::optional<Interval>& iv : intervals) {
        FunctionSpec scoped = f;
        Interval interval = f.domain();
        std::string reason;
        const bool admitted = scope_case(f, iv, scoped, interval, reason);
        for (double alpha : alphas) {
          for (double r : rs) {
            for (std::size_t hi = 0; hi < h_count; ++hi) {
              const std::optional<double> r_opt =
                  needs_r(id) ? std::optional<double>(r) : std::nullopt;
              const HFunction* h = needs_h(id) ? &res.hs[hi] : nullptr;
              const std::optional<std::string> h_id =
                  h ? std::optional<std::string>(h->id()) : std::nullopt;
              if (!admitted) {
                out.rows.push_back(skipped_row(id, f.id(), interval, alpha,
                                               r_opt, h_id, reason));
                continue;
              }
              try {
                const MembershipReport gate =
                    gate_check(id, scoped, r_opt, h, res.options.sampling);
                if (!gate.pass) {
                  std::ostringstream why;
                  why << "sampled membership failed for " << gate.class_id
                      << " (worst margin " << gate.worst_margin << ")";
                  out.rows.push_back(skipped_row(id, scoped.id(), interval,
                                                 alpha, r_opt, h_id,
                                                 why.str()));
                  continue;
                }
                Extras extras;
                extras.r = r_opt;
                if (h) {
                  extras.h = *h;
                }
                const BoundReport rep =
                    eval_theorem(id, scoped, interval, FracOrder(alpha),
                                 extras, gated);
                out.rows.push_back(report_row(rep));
                out.violations += rep.satisfied ? 0 : 1;
              } catch (const std::domain_error& e) {
                out.rows.push_back(skipped_row(id, scoped.id(), interval,
                                               alpha, r_opt, h_id, e.what()));
              } catch (const std::exception& e) {
                ordered_json row = skipped_row(id, scoped.id(), interval,
                                               alpha, r_opt, h_id, "");
                row.erase("skipped");
                row.erase("reason");
                row["error"] = e.what();
                out.rows.push_back(std::move(row));
                ++out.errors;
              }
            }
          }
        }
      }
    }
  }
}

void run_membership(const RunConfig& config, const Resolved& res,
                    ModeResult& out) {
  std::vector<std::optional<Interval>> intervals;
  if (config.intervals.empty()) {
    intervals.push_back(std::nullopt);
  } else {
    for (const Interval& iv : config.intervals) {
      intervals.emplace_back(iv);
    }
  }
  const auto emit = [&](const FunctionSpec& f, const Interval& interval,
                        const MembershipReport& m) {
    const bool claimed =
        f.claims(m.class_id) ||
        (m.class_id.rfind("r_convex:", 0) == 0 && f.claims("r_convex"));
    ordered_json row;
    row["function"] = m.function_id;
    row["a"] = interval.a;
    row["b"] = interval.b;
    row["class"] = m.class_id;
    row["claimed"] = claimed;
    row["pass"] = m.pass;
    row["worst_margin"] = m.worst_margin;
    row["witness_x"] = m.witness.x;
    row["witness_y"] = m.witness.y;
    row["witness_lambda"] = m.witness.lambda;
    row["samples"] = m.samples_used;
    row["tolerance"] = m.tolerance;
    out.rows.push_back(std::move(row));
    if (claimed && !m.pass) {
      ++out.conflicts;
    }
  };
  for (const FunctionSpec& f : res.functions) {
    for (const std::optional<Interval>& iv : intervals) {
      FunctionSpec scoped = f;
      Interval interval = f.domain();
      std::string reason;
      if (!scope_case(f, iv, scoped, interval, reason)) {
        ordered_json row;
        row["function"] = f.id();
        row["a"] = interval.a;
        row["b"] = interval.b;
        row["skipped"] = true;
        row["reason"] = reason;
        out.rows.push_back(std::move(row));
        continue;
      }
      try {
        emit(scoped, interval, check_convex(scoped, res.options.sampling));
        emit(scoped, interval,
             check_godunova_levin(scoped, res.options.sampling));
        emit(scoped, interval, check_p_function(scoped, res.options.sampling));
        for (double r : config.rs) {
          try {
            emit(scoped, interval,
                 check_r_convex(scoped, r, res.options.sampling));
          } catch (const std::domain_error& e) {
            ordered_json row;
            row["function"] = scoped.id();
            row["a"] = interval.a;
            row["b"] = interval.b;
            row["class"] = "r_convex:r=" + format17(r);
            row["skipped"] = true;
            row["reason"] = std::string("not applicable: ") + e.what();
            out.rows.push_back(std::move(row));
          }
        }
        for (const HFunction& h : res.hs) {
          emit(scoped, interval, check_h_convex(scoped, h, res.options.sampling));
        }
      } catch (const std::exception& e) {
        ordered_json row;
        row["function"] = scoped.id();
        row["a"] = interval.a;
        row["b"] = interval.b;
        row["error"] = e.what();
        out.rows.push_back(std::move(row));
        ++out.errors;
      }
    }
  }
}

void run_reductions(const RunConfig& config, const Resolved& res,
                    ModeResult& out) {
  std::vector<std::optional<Interval>> intervals;
  if (config.intervals.empty()) {
    intervals.push_back(std::nullopt);
  } else {
    for (const Interval& iv : config.intervals) {
      intervals.emplace_back(iv);
    }
  }
  for (const FunctionSpec& f : res.functions) {
    for (const std::optional<Interval>& iv : intervals) {
      FunctionSpec scoped = f;
      Interval interval = f.domain();
      std::string reason;
      if (!scope_case(f, iv, scoped, interval, reason)) {
        ordered_json row;
        row["function"] = f.id();
        row["a"] = interval.a;
        row["b"] = interval.b;
        row["skipped"] = true;
        row["reason"] = reason;
        out.rows.push_back(std::move(row));
        continue;
      }
      for (double r : config.rs) {
        Extras extras;
        extras.r = r;
        extras.h = res.hs.front();
        extras.alpha = config.alphas.front();
        try {
          const ReductionReport rep =
              check_reductions(scoped, interval, extras, res.options);
          out.reductions_ok = out.reductions_ok && rep.all_ok;
          for (const ReductionEntry& entry : rep.entries) {
            ordered_json row;
            row["function"] = rep.function_id;
            row["a"] = rep.a;
            row["b"] = rep.b;
            row["from"] = to_string(entry.from);
            row["target"] = to_string(entry.target);
            row["alpha"] = entry.alpha;
            if (entry.r) {
              row["r"] = *entry.r;
            }
            if (entry.h_id) {
              row["h"] = *entry.h_id;
            }
            row["normalization"] = entry.normalization;
            for (std::size_t i = 0; i < entry.from_sides.size(); ++i) {
              const std::string tag = "from" + std::to_string(i + 1);
              row[tag + "_name"] = entry.from_sides[i].name;
              row[tag + "_value"] = entry.from_sides[i].value;
            }
            for (std::size_t i = 0; i < entry.target_sides.size(); ++i) {
              const std::string tag = "target" + std::to_string(i + 1);
              row[tag + "_name"] = entry.target_sides[i].name;
              row[tag + "_value"] = entry.target_sides[i].value;
            }
            for (std::size_t i = 0; i < entry.abs_diff.size(); ++i) {
              row["diff" + std::to_string(i + 1)] = entry.abs_diff[i];
            }
            row["expect_identical"] = entry.expect_identical;
            row["identical"] = entry.identical;
            row["ordering_ok"] = entry.ordering_ok;
            row["skipped"] = entry.skipped;
            row["tolerance"] = entry.tolerance;
            if (!entry.notes.empty()) {
              row["notes"] = join_notes(entry.notes);
            }
            out.rows.push_back(std::move(row));
          }
        } catch (const std::exception& e) {
          ordered_json row;
          row["function"] = scoped.id();
          row["a"] = interval.a;
          row["b"] = interval.b;
          row["r"] = r;
          row["error"] = e.what();
          out.rows.push_back(std::move(row));
          ++out.errors;
        }
      }
    }
  }
}

void run_falsify(const RunConfig& config, const Resolved& res,
                 ModeResult& out) {
  FalsifyConfig fc;
  fc.theorem = config.theorem.value_or(TheoremId::hh_fractional);
  fc.generator = config.generator;
  fc.trials = config.trials;
  fc.seed = config.seed;
  fc.options = res.options;
  const FalsifyOutcome outcome = falsify(fc);
  for (std::size_t i = 0; i < outcome.cases.size(); ++i) {
    const FalsifyCase& item = outcome.cases[i];
    ordered_json row;
    row["case"] = i;
    row["theorem"] = to_string(outcome.theorem);
    if (item.report) {
      const BoundReport& rep = *item.report;
      row["function"] = rep.inputs.function_id;
      row["a"] = rep.inputs.a;
      row["b"] = rep.inputs.b;
      row["alpha"] = rep.inputs.alpha;
      if (rep.inputs.r) {
        row["r"] = *rep.inputs.r;
      }
      if (rep.inputs.h_id) {
        row["h"] = *rep.inputs.h_id;
      }
      row["min_margin"] = min_margin(rep);
      row["tolerance"] = rep.tolerance;
      row["satisfied"] = rep.satisfied;
      row["preconditions_met"] = rep.preconditions_met;
      if (!rep.notes.empty()) {
        row["notes"] = join_notes(rep.notes);
      }
    }
    row["violation"] = item.violation;
    row["finding"] = item.finding;
    row["precondition_failure"] = item.precondition_failure;
    if (!item.error.empty()) {
      row["error"] = item.error;
    }
    out.rows.push_back(std::move(row));
  }
  out.summary = ordered_json{{"generator", outcome.generator},
                             {"violations", outcome.violations},
                             {"findings", outcome.findings},
                             {"precondition_failures",
                              outcome.precondition_failures},
                             {"expectation", outcome.expectation},
                             {"expectation_met", outcome.expectation_met}};
  out.expectation_met = outcome.expectation_met;
}

}  // namespace

std::string to_string(RunMode mode) {
  switch (mode) {
    case RunMode::eval:
      return "eval";
    case RunMode::sweep:
      return "sweep";
    case RunMode::membership:
      return "membership";
    case RunMode::reductions:
      return "reductions";
    case RunMode::falsify:
      return "falsify";
  }
  throw std::invalid_argument("unknown run mode");
}

RunMode run_mode_from_string(const std::string& text) {
  if (text == "eval") return RunMode::eval;
  if (text == "sweep") return RunMode::sweep;
  if (text == "membership") return RunMode::membership;
  if (text == "reductions") return RunMode::reductions;
  if (text == "falsify") return RunMode::falsify;
  throw ConfigError("unknown mode '" + text + "'");
}

std::string to_string(ReportFormat format) {
  return format == ReportFormat::json ? "json" : "csv";
}

ReportFormat format_from_string(const std::string& text) {
  if (text == "json") return ReportFormat::json;
  if (text == "csv") return ReportFormat::csv;
  throw ConfigError("unknown format '" + text + "' (expected json or csv)");
}

void apply_json_config(RunConfig& config, const std::string& json_text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(json_text);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) {
    throw ConfigError("config document must be a JSON object");
  }
  try {
    for (auto it = doc.begin(); it != doc.end(); ++it) {
      const std::string& key = it.key();
      const ordered_json& v = it.value();
      if (key == "mode") {
        config.mode = run_mode_from_string(v.get<std::string>());
      } else if (key == "theorem") {
        config.theorem = theorem_from_string(v.get<std::string>());
      } else if (key == "functions") {
        config.functions = v.get<std::vector<std::string>>();
      } else if (key == "intervals") {
        config.intervals.clear();
        for (const ordered_json& pair : v) {
          if (!pair.is_array() || pair.size() != 2) {
            throw ConfigError("intervals entries must be [a, b] pairs");
          }
          config.intervals.emplace_back(pair[0].get<double>(),
                                        pair[1].get<double>());
        }
      } else if (key == "alphas") {
        config.alphas = v.get<std::vector<double>>();
      } else if (key == "rs") {
        config.rs = v.get<std::vector<double>>();
      } else if (key == "hs") {
        config.hs = v.get<std::vector<std::string>>();
      } else if (key == "quadrature") {
        for (auto q = v.begin(); q != v.end(); ++q) {
          if (q.key() == "nodes") {
            config.quadrature.nodes = q.value().get<int>();
          } else if (q.key() == "panels") {
            config.quadrature.panels = q.value().get<int>();
          } else if (q.key() == "target_rel_tol") {
            config.quadrature.target_rel_tol = q.value().get<double>();
          } else {
            throw ConfigError("unknown quadrature key '" + q.key() + "'");
          }
        }
      } else if (key == "sampling") {
        for (auto s = v.begin(); s != v.end(); ++s) {
          if (s.key() == "lambda_grid") {
            config.sampling.lambda_grid = s.value().get<int>();
          } else if (s.key() == "point_grid") {
            config.sampling.point_grid = s.value().get<int>();
          } else if (s.key() == "random_triples") {
            config.sampling.random_triples = s.value().get<int>();
          } else if (s.key() == "membership_tol") {
            config.sampling.membership_tol = s.value().get<double>();
          } else if (s.key() == "open_margin") {
            config.sampling.open_margin = s.value().get<double>();
          } else {
            throw ConfigError("unknown sampling key '" + s.key() + "'");
          }
        }
      } else if (key == "seed") {
        config.seed = v.get<std::uint64_t>();
      } else if (key == "strict_preconditions") {
        config.strict_preconditions = v.get<bool>();
      } else if (key == "generator") {
        config.generator = v.get<std::string>();
      } else if (key == "trials") {
        config.trials = v.get<int>();
      } else if (key == "out") {
        config.out_path = v.get<std::string>();
      } else if (key == "format") {
        config.format = format_from_string(v.get<std::string>());
      } else {
        throw ConfigError("unknown config key '" + key + "'");
      }
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
}

RunOutput run(const RunConfig& config) {
  const auto t0 = std::chrono::steady_clock::now();
  const Resolved res = resolve(config);

  ModeResult result;
  switch (config.mode) {
    case RunMode::eval:
      run_eval(config, res, result);
      break;
    case RunMode::sweep:
      run_sweep(config, res, result);
      break;
    case RunMode::membership:
      run_membership(config, res, result);
      break;
    case RunMode::reductions:
      run_reductions(config, res, result);
      break;
    case RunMode::falsify:
      run_falsify(config, res, result);
      break;
  }

  int exit_code = 0;
  if (config.mode == RunMode::falsify) {
    exit_code = result.expectation_met ? 0 : 1;
  } else if (result.errors > 0) {
    exit_code = 3;
  } else if (config.mode == RunMode::membership) {
    exit_code = result.conflicts > 0 ? 1 : 0;
  } else if (config.mode == RunMode::reductions) {
    exit_code = result.reductions_ok ? 0 : 1;
  } else {
    exit_code = result.violations > 0 ? 1 : 0;
  }

  const double elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                               t0)
          .count();

  RunOutput out;
  out.exit_code = exit_code;
  if (config.format == ReportFormat::csv) {
    out.report = render_csv(result.rows);
    return out;
  }

  ordered_json meta;
  meta["version"] = kVersion;
  meta["mode"] = to_string(config.mode);
  meta["seed"] = config.seed;
  meta["strict_preconditions"] = config.strict_preconditions;
  meta["quadrature"] = ordered_json{
      {"nodes", config.quadrature.nodes},
      {"panels", config.quadrature.panels},
      {"target_rel_tol", config.quadrature.target_rel_tol}};
  meta["sampling"] = ordered_json{
      {"lambda_grid", config.sampling.lambda_grid},
      {"point_grid", config.sampling.point_grid},
      {"random_triples", config.sampling.random_triples},
      {"membership_tol", config.sampling.membership_tol},
      {"open_margin", config.sampling.open_margin}};
  if (config.mode == RunMode::falsify) {
    meta["generator"] = config.generator;
    meta["trials"] = config.trials;
  }
  meta["timestamp"] = utc_timestamp();
  meta["elapsed_ms"] = elapsed_ms;

  ordered_json doc;
  doc["meta"] = std::move(meta);
  if (!result.summary.is_null()) {
    doc["summary"] = std::move(result.summary);
  }
  doc["cases"] = ordered_json::array();
  for (const ordered_json& row : result.rows) {
    doc["cases"].push_back(row);
  }
  out.report = doc.dump(2) + "\n";
  return out;
}

}  // namespace hhfrac
