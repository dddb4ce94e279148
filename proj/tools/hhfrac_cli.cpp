// Command-line front end: builds a RunConfig from defaults, an optional JSON
// config document, and flag overrides (flags win), then executes the run and
// writes the report.
//
// Exit codes: 0 success per mode semantics, 1 chain violation (or unmet
// falsification expectation), 2 configuration/usage error, 3 evaluation
// error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hhfrac/harness.hpp"

namespace {

std::vector<double> parse_double_list(const std::string& text,
                                      const char* flag) {
  std::vector<double> out;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    try {
      std::size_t used = 0;
      const double v = std::stod(item, &used);
      if (used != item.size()) {
        throw std::invalid_argument(item);
      }
      out.push_back(v);
    } catch (const std::exception&) {
      throw hhfrac::ConfigError(std::string(flag) + ": '" + item +
                                "' is not a number");
    }
  }
  if (out.empty()) {
    throw hhfrac::ConfigError(std::string(flag) + ": empty list");
  }
  return out;
}

hhfrac::Interval parse_interval(const std::string& text) {
  const auto values = parse_double_list(text, "--interval");
  if (values.size() != 2) {
    throw hhfrac::ConfigError("--interval expects 'a,b'");
  }
  try {
    return hhfrac::Interval(values[0], values[1]);
  } catch (const std::exception& e) {
    throw hhfrac::ConfigError(std::string("--interval: ") + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Numerical toolkit for Hermite-Hadamard-type inequality chains under "
      "Riemann-Liouville fractional integrals"};
  // long-form help only: the default -h short flag would collide with --h
  app.set_help_flag("--help", "print usage and exit");
  app.set_version_flag("--version", hhfrac::kVersion);

  std::string mode_text;
  std::string theorem_text;
  std::vector<std::string> function_specs;
  std::vector<std::string> interval_texts;
  std::string alpha_text;
  std::string r_text;
  std::string h_text;
  std::uint64_t seed = 0;
  std::string out_path;
  std::string format_text;
  std::string strict_text;
  int panels = 0;
  int nodes = 0;
  std::string config_path;
  std::string generator;
  int trials = 0;

  app.add_option("--mode", mode_text,
                 "eval | sweep | membership | reductions | falsify");
  app.add_option("--theorem", theorem_text,
                 "chain id, e.g. hh_fractional or q_classical");
  app.add_option("--function", function_specs,
                 "function spec (repeatable), e.g. monomial:k=2");
  app.add_option("--interval", interval_texts,
                 "interval as 'a,b' (repeatable)");
  app.add_option("--alpha", alpha_text, "comma list of fractional orders");
  app.add_option("--r", r_text, "comma list of r values in (0,1]");
  app.add_option("--h", h_text,
                 "h spec: identity | const | recip | power:s=<s>");
  app.add_option("--seed", seed, "sampling / falsification seed");
  app.add_option("--out", out_path, "report path (default: stdout)");
  app.add_option("--format", format_text, "json | csv");
  app.add_option("--strict-preconditions", strict_text,
                 "on | off (default on)")
      ->check(CLI::IsMember({"on", "off"}));
  app.add_option("--panels", panels, "quadrature panel count override");
  app.add_option("--nodes", nodes, "Gauss-Legendre nodes per panel override");
  app.add_option("--config", config_path, "JSON config file (flags override)");
  app.add_option("--generator", generator,
                 "falsify generator: in-class | concave | negative");
  app.add_option("--trials", trials, "falsify trial count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    hhfrac::RunConfig config;
    if (app.count("--config") > 0) {
      std::ifstream in(config_path);
      if (!in) {
        throw hhfrac::ConfigError("cannot read config file '" + config_path +
                                  "'");
      }
      std::ostringstream text;
      text << in.rdbuf();
      hhfrac::apply_json_config(config, text.str());
    }
    if (app.count("--mode") > 0) {
      config.mode = hhfrac::run_mode_from_string(mode_text);
    }
    if (app.count("--theorem") > 0) {
      try {
        config.theorem = hhfrac::theorem_from_string(theorem_text);
      } catch (const std::invalid_argument& e) {
        throw hhfrac::ConfigError(e.what());
      }
    }
    if (app.count("--function") > 0) {
      config.functions = function_specs;
    }
    if (app.count("--interval") > 0) {
      config.intervals.clear();
      for (const std::string& text : interval_texts) {
        config.intervals.push_back(parse_interval(text));
      }
    }
    if (app.count("--alpha") > 0) {
      config.alphas = parse_double_list(alpha_text, "--alpha");
    }
    if (app.count("--r") > 0) {
      config.rs = parse_double_list(r_text, "--r");
    }
    if (app.count("--h") > 0) {
      config.hs = {h_text};
    }
    if (app.count("--seed") > 0) {
      config.seed = seed;
    }
    if (app.count("--out") > 0) {
      config.out_path = out_path;
    }
    if (app.count("--format") > 0) {
      config.format = hhfrac::format_from_string(format_text);
    }
    if (app.count("--strict-preconditions") > 0) {
      config.strict_preconditions = strict_text == "on";
    }
    if (app.count("--panels") > 0) {
      config.quadrature.panels = panels;
    }
    if (app.count("--nodes") > 0) {
      config.quadrature.nodes = nodes;
    }
    if (app.count("--generator") > 0) {
      config.generator = generator;
    }
    if (app.count("--trials") > 0) {
      config.trials = trials;
    }

    const hhfrac::RunOutput result = hhfrac::run(config);
    if (config.out_path.empty()) {
      std::cout << result.report;
    } else {
      std::ofstream out(config.out_path);
      if (!out) {
        std::cerr << "error: cannot write report to '" << config.out_path
                  << "'\n";
        return 3;
      }
      out << result.report;
    }
    return result.exit_code;
  } catch (const hhfrac::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
