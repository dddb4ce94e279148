#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "hhfrac/harness.hpp"

using namespace hhfrac;
using nlohmann::ordered_json;

namespace {

ordered_json parse_report(const RunOutput& out) {
  return ordered_json::parse(out.report);
}

// Splits one CSV line, honoring double-quoted cells with doubled quotes.
std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  cells.push_back(cur);
  return cells;
}

// Drops the wall-clock lines so two runs of the same campaign compare equal.
std::string strip_volatile(const std::string& text) {
  std::istringstream in(text);
  std::ostringstream kept;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find("timestamp") != std::string::npos) continue;
    if (line.find("elapsed_ms") != std::string::npos) continue;
    kept << line << '\n';
  }
  return kept.str();
}

}  // namespace

TEST_CASE("mode and format string round-trips") {
  for (RunMode m : {RunMode::eval, RunMode::sweep, RunMode::membership,
                    RunMode::reductions, RunMode::falsify}) {
    CHECK(run_mode_from_string(to_string(m)) == m);
  }
  CHECK(format_from_string("json") == ReportFormat::json);
  CHECK(format_from_string("csv") == ReportFormat::csv);
  CHECK_THROWS_AS(run_mode_from_string("meditate"), ConfigError);
  CHECK_THROWS_AS(format_from_string("xml"), ConfigError);
}

TEST_CASE("json config application") {
  RunConfig cfg;
  apply_json_config(cfg, R"({
    "mode": "eval",
    "theorem": "hh_fractional",
    "functions": ["monomial:k=2"],
    "intervals": [[0, 1]],
    "alphas": [2.0],
    "rs": [0.5, 1.0],
    "hs": ["identity", "const"],
    "seed": 9,
    "strict_preconditions": false,
    "format": "csv",
    "trials": 5,
    "generator": "concave"
  })");
  CHECK(cfg.mode == RunMode::eval);
  REQUIRE(cfg.theorem.has_value());
  CHECK(*cfg.theorem == TheoremId::hh_fractional);
  REQUIRE(cfg.functions.size() == 1);
  CHECK(cfg.functions[0] == "monomial:k=2");
  REQUIRE(cfg.intervals.size() == 1);
  CHECK(cfg.intervals[0] == Interval{0.0, 1.0});
  CHECK(cfg.alphas == std::vector<double>{2.0});
  CHECK(cfg.rs == std::vector<double>{0.5, 1.0});
  CHECK(cfg.hs == std::vector<std::string>{"identity", "const"});
  CHECK(cfg.seed == 9);
  CHECK_FALSE(cfg.strict_preconditions);
  CHECK(cfg.format == ReportFormat::csv);
  CHECK(cfg.trials == 5);
  CHECK(cfg.generator == "concave");

  RunConfig other;
  CHECK_THROWS_AS(apply_json_config(other, R"({"modus": "eval"})"),
                  ConfigError);
  CHECK_THROWS_AS(apply_json_config(other, "not json"), ConfigError);
  CHECK_THROWS_AS(apply_json_config(other, R"({"intervals": [[1]]})"),
                  ConfigError);
}

TEST_CASE("eval mode reports one case with exact sides") {
  RunConfig cfg;
  cfg.mode = RunMode::eval;
  cfg.theorem = TheoremId::hh_fractional;
  cfg.functions = {"monomial:k=2"};
  cfg.intervals = {Interval{0.0, 1.0}};
  cfg.alphas = {2.0};
  RunOutput out = run(cfg);
  CHECK(out.exit_code == 0);
  ordered_json doc = parse_report(out);
  CHECK(doc["meta"]["version"] == kVersion);
  CHECK(doc["meta"]["mode"] == "eval");
  CHECK(doc["meta"].contains("timestamp"));
  CHECK(doc["meta"].contains("elapsed_ms"));
  CHECK(doc["meta"]["quadrature"]["nodes"].get<int>() >= 2);
  REQUIRE(doc["cases"].size() == 1);
  const ordered_json& row = doc["cases"][0];
  CHECK(row["theorem"] == "hh_fractional");
  CHECK(row["function"] == "monomial:k=2");
  CHECK(row["alpha"].get<double>() == 2.0);
  CHECK(row["satisfied"].get<bool>());
  // x^2 at alpha = 2: mid-value 1/4, fractional mean 1/3, endpoint avg 1/2
  CHECK(row["side1_name"] == "f_mid");
  CHECK(std::abs(row["side1_value"].get<double>() - 0.25) <= 1e-12);
  CHECK(std::abs(row["side2_value"].get<double>() - 1.0 / 3.0) <= 1e-10);
  CHECK(std::abs(row["side3_value"].get<double>() - 0.5) <= 1e-12);
  CHECK(row["min_margin"].get<double>() > 0.0);
}

TEST_CASE("eval mode propagates an unmet chain as exit 1") {
  RunConfig cfg;
  cfg.mode = RunMode::eval;
  cfg.theorem = TheoremId::hh_fractional;
  cfg.functions = {"sqrt"};
  cfg.alphas = {1.0};
  RunOutput out = run(cfg);
  CHECK(out.exit_code == 1);
  ordered_json doc = parse_report(out);
  CHECK_FALSE(doc["cases"][0]["satisfied"].get<bool>());
}

TEST_CASE("eval mode requires a theorem") {
  RunConfig cfg;
  cfg.mode = RunMode::eval;
  cfg.functions = {"monomial:k=2"};
  CHECK_THROWS_AS(run(cfg), ConfigError);
}

TEST_CASE("config validation rejects bad inputs") {
  RunConfig cfg;
  cfg.functions = {"warble:k=2"};
  CHECK_THROWS_AS(run(cfg), ConfigError);

  RunConfig cfg2;
  cfg2.alphas = {-1.0};
  CHECK_THROWS_AS(run(cfg2), ConfigError);

  RunConfig cfg3;
  cfg3.rs = {2.0};
  CHECK_THROWS_AS(run(cfg3), ConfigError);

  RunConfig cfg4;
  cfg4.hs = {"spline"};
  CHECK_THROWS_AS(run(cfg4), ConfigError);

  RunConfig cfg5;
  cfg5.trials = 0;
  cfg5.mode = RunMode::falsify;
  CHECK_THROWS_AS(run(cfg5), ConfigError);
}

TEST_CASE("sweep over the corpus stays within tolerance") {
  RunConfig cfg;
  cfg.mode = RunMode::sweep;
  cfg.theorem = TheoremId::p_fractional;
  cfg.alphas = {0.25, 0.5, 1.0, 2.0, 3.0};
  RunOutput out = run(cfg);
  CHECK(out.exit_code == 0);
  ordered_json doc = parse_report(out);
  CHECK(doc["cases"].size() > 0);
  int evaluated = 0;
  for (const auto& row : doc["cases"]) {
    if (row.contains("skipped") && row["skipped"].get<bool>()) continue;
    ++evaluated;
    CHECK(row["satisfied"].get<bool>());
    CHECK(row["min_margin"].get<double>() >= -1e-9);
  }
  CHECK(evaluated > 0);
}

TEST_CASE("membership mode matches claims and exits 0") {
  RunConfig cfg;
  cfg.mode = RunMode::membership;
  cfg.rs = {0.5, 1.0};
  RunOutput out = run(cfg);
  CHECK(out.exit_code == 0);
  ordered_json doc = parse_report(out);
  bool saw_exp_r = false;
  for (const auto& row : doc["cases"]) {
    if (row["function"] == "exp:c=1,k=1" &&
        row["class"].get<std::string>().find("r_convex") == 0) {
      saw_exp_r = true;
      CHECK(row["pass"].get<bool>());
    }
  }
  CHECK(saw_exp_r);
}

TEST_CASE("reductions mode audits the corpus and exits 0") {
  RunConfig cfg;
  cfg.mode = RunMode::reductions;
  RunOutput out = run(cfg);
  CHECK(out.exit_code == 0);
  ordered_json doc = parse_report(out);
  CHECK(doc["cases"].size() > 0);
  for (const auto& row : doc["cases"]) {
    if (row.contains("skipped") && row["skipped"].get<bool>()) continue;
    if (!row.contains("expect_identical")) continue;
    if (row["expect_identical"].get<bool>()) {
      CHECK(row["identical"].get<bool>());
    } else {
      CHECK(row["ordering_ok"].get<bool>());
    }
  }
}

TEST_CASE("falsify mode summarizes the campaign") {
  RunConfig cfg;
  cfg.mode = RunMode::falsify;
  cfg.theorem = TheoremId::hh_fractional;
  cfg.generator = "concave";
  cfg.trials = 5;
  RunOutput out = run(cfg);
  CHECK(out.exit_code == 0);  // expectation met: violations were found
  ordered_json doc = parse_report(out);
  CHECK(doc["summary"]["generator"] == "concave");
  CHECK(doc["summary"]["violations"].get<int>() >= 1);
  CHECK(doc["summary"]["expectation_met"].get<bool>());
  CHECK(doc["cases"].size() == 5);
}

TEST_CASE("identical configs render identical reports modulo wall clock") {
  RunConfig cfg;
  cfg.mode = RunMode::sweep;
  cfg.seed = 0;
  RunOutput a = run(cfg);
  RunOutput b = run(cfg);
  CHECK(a.exit_code == b.exit_code);
  CHECK(strip_volatile(a.report) == strip_volatile(b.report));
}

TEST_CASE("csv cells round-trip the json doubles exactly") {
  RunConfig cfg;
  cfg.mode = RunMode::eval;
  cfg.theorem = TheoremId::p_fractional;
  cfg.functions = {"exp:c=1,k=1"};
  cfg.alphas = {0.75};
  RunOutput js = run(cfg);
  cfg.format = ReportFormat::csv;
  RunOutput cs = run(cfg);

  ordered_json doc = parse_report(js);
  const ordered_json& row = doc["cases"][0];

  std::istringstream in(cs.report);
  std::string header, data;
  REQUIRE(std::getline(in, header));
  REQUIRE(std::getline(in, data));
  std::vector<std::string> names = split_csv_line(header);
  std::vector<std::string> cells = split_csv_line(data);
  REQUIRE(names.size() == cells.size());
  int compared = 0;
  for (size_t i = 0; i < names.size(); ++i) {
    if (!row.contains(names[i])) continue;
    const ordered_json& v = row[names[i]];
    if (!v.is_number_float()) continue;
    char* end = nullptr;
    double parsed = std::strtod(cells[i].c_str(), &end);
    CHECK_MESSAGE(parsed == v.get<double>(), "column ", names[i]);
    ++compared;
  }
  CHECK(compared >= 5);  // sides, margins, tolerance all present
}

TEST_CASE("command line tool behaves at the process boundary") {
  const char* cli = std::getenv("HHFRAC_CLI");
  if (cli == nullptr || std::strlen(cli) == 0) {
    MESSAGE("HHFRAC_CLI not set; skipping subprocess checks");
    return;
  }
  const std::string base(cli);
  auto run_cmd = [](const std::string& cmd) {
    int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WEXITSTATUS(status);
  };

  CHECK(run_cmd(base +
                " --mode eval --theorem hh_fractional"
                " --function monomial:k=2 --alpha 2"
                " > /tmp/hhfrac_cli_eval.json") == 0);
  std::ifstream in("/tmp/hhfrac_cli_eval.json");
  ordered_json doc = ordered_json::parse(in);
  CHECK(doc["meta"]["mode"] == "eval");
  CHECK(doc["cases"][0]["satisfied"].get<bool>());

  CHECK(run_cmd(base + " --mode tarot 2> /dev/null") == 2);
  CHECK(run_cmd(base + " --mode eval --theorem zz --function sqrt"
                       " 2> /dev/null") == 2);
  CHECK(run_cmd(base +
                " --mode eval --theorem hh_fractional --function sqrt"
                " > /dev/null") == 1);
  CHECK(run_cmd(base +
                " --mode falsify --theorem hh_fractional"
                " --generator concave --trials 4 > /dev/null") == 0);

  // config file merged under explicit flags
  const char* cfg_path = "/tmp/hhfrac_cli_cfg.json";
  {
    std::ofstream cfg(cfg_path);
    cfg << R"({"mode": "eval", "theorem": "p_fractional",)"
        << R"( "functions": ["monomial:k=2"], "alphas": [1.0]})";
  }
  CHECK(run_cmd(base + " --config " + cfg_path +
                " > /tmp/hhfrac_cli_cfgout.json") == 0);
  {
    std::ifstream cin("/tmp/hhfrac_cli_cfgout.json");
    ordered_json cdoc = ordered_json::parse(cin);
    CHECK(cdoc["cases"][0]["theorem"] == "p_fractional");
    CHECK(cdoc["cases"][0]["alpha"].get<double>() == 1.0);
  }
  CHECK(run_cmd(base + " --config " + cfg_path +
                " --alpha 2 > /tmp/hhfrac_cli_cfgover.json") == 0);
  {
    std::ifstream cin("/tmp/hhfrac_cli_cfgover.json");
    ordered_json cdoc = ordered_json::parse(cin);
    CHECK(cdoc["cases"][0]["alpha"].get<double>() == 2.0);
  }

  // --out writes the file instead of stdout
  CHECK(run_cmd(base +
                " --mode eval --theorem hh_fractional"
                " --function monomial:k=2 --out /tmp/hhfrac_cli_out.json"
                " > /dev/null") == 0);
  std::ifstream fout("/tmp/hhfrac_cli_out.json");
  CHECK(fout.good());
  ordered_json odoc = ordered_json::parse(fout);
  CHECK(odoc["meta"]["mode"] == "eval");
}
