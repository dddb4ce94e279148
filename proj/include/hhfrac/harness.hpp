#pragma once

// Run configuration and report assembly behind the command-line tool: single
// evaluations, corpus sweeps, membership audits, reduction audits, and
// falsification campaigns, emitted as JSON or CSV with deterministic
// content for a fixed config and seed.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hhfrac/inequalities.hpp"

namespace hhfrac {

inline constexpr const char* kVersion = "0.1.0";

enum class RunMode { eval, sweep, membership, reductions, falsify };
enum class ReportFormat { json, csv };

std::string to_string(RunMode mode);
RunMode run_mode_from_string(const std::string& text);
std::string to_string(ReportFormat format);
ReportFormat format_from_string(const std::string& text);

// Invalid or inconsistent run configuration; the CLI maps this to exit 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  RunMode mode = RunMode::sweep;
  // Empty: eval requires one; sweep covers every fractional chain;
  // falsify defaults to the convex fractional chain.
  std::optional<TheoremId> theorem;
  // Function spec strings ("monomial:k=2", ...). Empty: the default corpus,
  // each member on its own domain.
  std::vector<std::string> functions;
  // Empty: each function's own domain. Otherwise the case grid crosses
  // functions with these intervals (inadmissible pairs are skipped).
  std::vector<Interval> intervals;
  std::vector<double> alphas = {1.0};
  std::vector<double> rs = {1.0};
  std::vector<std::string> hs = {"identity"};
  QuadratureSpec quadrature{};
  SamplingPlan sampling{};
  std::uint64_t seed = 0;
  bool strict_preconditions = true;
  // Falsify-mode knobs.
  std::string generator = "in-class";
  int trials = 64;
  std::string out_path;  // empty: stdout (written by the CLI)
  ReportFormat format = ReportFormat::json;
};

// Merges a JSON config document onto an existing config (typically the
// defaults). Unknown keys and malformed values raise ConfigError.
void apply_json_config(RunConfig& config, const std::string& json_text);

struct RunOutput {
  int exit_code = 0;  // 0 ok, 1 violation/unmet expectation, 3 evaluation error
  std::string report;
};

// Executes the configured campaign and renders the report. Configuration
// problems raise ConfigError (exit 2 at the CLI); evaluation errors are
// captured per case and surface as exit code 3.
RunOutput run(const RunConfig& config);

}  // namespace hhfrac
