#include <doctest.h>

#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "torsionflow/runner.hpp"

using namespace torsionflow;
namespace fs = std::filesystem;

namespace {

fs::path freshDir(const std::string& tag) {
  const fs::path dir =
      fs::temp_directory_path() / ("torsionflow_test_" + tag + "_" +
                                   std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

double column(const std::string& row, int index) {
  std::istringstream in(row);
  std::string cell;
  for (int i = 0; i <= index; ++i) REQUIRE(std::getline(in, cell, ','));
  return std::stod(cell);
}

}  // namespace

TEST_CASE("config parsing accepts the documented schema") {
  const ScenarioConfig cfg = parseConfig(
      R"({"scenario":"su2_flow","params":{"t_end":0.2,"dt":1e-3},"output_dir":"x"})");
  CHECK(cfg.scenario == "su2_flow");
  CHECK(cfg.params.at("t_end") == 0.2);
  CHECK(cfg.params.at("dt") == 1e-3);
  CHECK(cfg.output_dir == "x");
}

TEST_CASE("config parsing rejects malformed documents") {
  CHECK_THROWS_AS(parseConfig("not json"), ConfigInvalid);
  CHECK_THROWS_AS(parseConfig("[1,2]"), ConfigInvalid);
  CHECK_THROWS_AS(parseConfig(R"({"params":{}})"), ConfigInvalid);
  CHECK_THROWS_AS(parseConfig(R"({"scenario":7})"), ConfigInvalid);
  CHECK_THROWS_AS(parseConfig(R"({"scenario":"x","output_dir":3})"), ConfigInvalid);
  CHECK_THROWS_AS(parseConfig(R"({"scenario":"x","params":[1]})"), ConfigInvalid);
  CHECK_THROWS_AS(parseConfig(R"({"scenario":"x","params":{"n":"3"}})"),
                  ConfigInvalid);
}

TEST_CASE("unknown scenarios and missing parameters are config errors") {
  ScenarioConfig cfg;
  cfg.scenario = "no_such_scenario";
  cfg.output_dir = freshDir("unknown").string();
  CHECK_THROWS_AS(runScenario(cfg), ConfigInvalid);

  cfg.scenario = "su2_flow";  // t_end required
  CHECK_THROWS_AS(runScenario(cfg), ConfigInvalid);

  cfg.scenario = "verify_conformal";  // seed required
  CHECK_THROWS_AS(runScenario(cfg), ConfigInvalid);

  cfg.scenario = "verify_conformal";
  cfg.params["seed"] = 1.5;  // integer parameters must be integers
  CHECK_THROWS_AS(runScenario(cfg), ConfigInvalid);
}

TEST_CASE("canonical shrinker trajectory artifact") {
  const fs::path dir = freshDir("flow");
  ScenarioConfig cfg;
  cfg.scenario = "su2_flow";
  cfg.params = {{"t_end", 0.2}, {"dt", 1e-3}, {"sample_every", 50}};
  cfg.output_dir = dir.string();
  const RunReport rep = runScenario(cfg);
  CHECK(rep.status == "pass");
  CHECK(allCasesPassed(rep));

  const auto rows = lines(slurp(dir / "su2_flow.csv"));
  REQUIRE(rows.size() >= 2);
  CHECK(rows[0] == "t,s,W,A_abs,J_a,J_b,J_c,energy,volume,dist_can");
  CHECK(rows.size() == 6);  // t = 0, 0.05, ..., 0.2
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double t = column(rows[i], 0);
    const double s = column(rows[i], 1);
    CHECK(std::abs(s - (1.0 - 4.0 * t)) < 1e-12);    // exact shrink rate
    CHECK(std::abs(column(rows[i], 3)) < 1e-12);     // torsion stays zero
    CHECK(std::abs(column(rows[i], 9)) < 1e-12);     // J stays canonical
    CHECK(std::abs(column(rows[i], 8) - 2 * s * s) < 1e-12);
  }
  CHECK(fs::exists(dir / "su2_flow.json"));
}

TEST_CASE("flow past the extinction time halts cleanly") {
  const fs::path dir = freshDir("extinct");
  ScenarioConfig cfg;
  cfg.scenario = "su2_flow";
  cfg.params = {{"t_end", 1.0}, {"dt", 1e-3}};
  cfg.output_dir = dir.string();
  const RunReport rep = runScenario(cfg);
  CHECK(rep.status == "halted(extinction)");
  CHECK(allCasesPassed(rep));  // every emitted sample was clean
  CHECK(fs::exists(dir / "su2_flow.csv"));
}

TEST_CASE("normalized flow from the canonical structure is stationary") {
  const fs::path dir = freshDir("fixed");
  ScenarioConfig cfg;
  cfg.scenario = "su2_normalized_flow";
  cfg.params = {{"t_end", 0.5}, {"dt", 1e-3}, {"sample_every", 100}};
  cfg.output_dir = dir.string();
  const RunReport rep = runScenario(cfg);
  CHECK(rep.status == "pass");
  const auto rows = lines(slurp(dir / "su2_normalized_flow.csv"));
  REQUIRE(rows.size() > 2);
  // The start is a fixed point: every state column stays constant to
  // rounding (the solved torsion at the fixed point is ~1e-16, not 0).
  for (std::size_t i = 2; i < rows.size(); ++i) {
    for (int col = 1; col <= 9; ++col) {
      CHECK(std::abs(column(rows[i], col) - column(rows[1], col)) <= 1e-12);
    }
    CHECK(column(rows[i], 1) == 1.0);  // normalized flow freezes s
  }
}

TEST_CASE("non-retractable initial data is rejected as a config error") {
  const fs::path dir = freshDir("unstable");
  ScenarioConfig cfg;
  cfg.scenario = "su2_flow";
  // b·c > 0 puts the trace-free part outside the retractable cone.
  cfg.params = {{"t_end", 0.1}, {"dt", 1e-3}, {"b", 2.0}, {"c", 0.5}};
  cfg.output_dir = dir.string();
  CHECK_THROWS_AS(runScenario(cfg), ConfigInvalid);
}

TEST_CASE("seeded verification suites are deterministic byte for byte") {
  const fs::path dir1 = freshDir("det1");
  const fs::path dir2 = freshDir("det2");
  ScenarioConfig cfg;
  cfg.scenario = "verify_conformal";
  cfg.params = {{"cases", 4}, {"degree", 2}, {"seed", 11}};
  cfg.output_dir = dir1.string();
  const RunReport r1 = runScenario(cfg);
  cfg.output_dir = dir2.string();
  const RunReport r2 = runScenario(cfg);
  CHECK(r1.status == "pass");
  CHECK(r1.cases == 4);
  CHECK(r1.passed == 4);
  CHECK(r1.worst_residual == 0.0);  // residuals are exact rational zeros
  CHECK(slurp(dir1 / "verify_conformal.json") ==
        slurp(dir2 / "verify_conformal.json"));
  CHECK(reportToJson(r1) == reportToJson(r2));
}

TEST_CASE("commutation suite runs clean on seeded inputs") {
  const fs::path dir = freshDir("comm");
  ScenarioConfig cfg;
  cfg.scenario = "verify_commutations";
  cfg.params = {{"cases", 3}, {"degree", 2}, {"seed", 5}};
  cfg.output_dir = dir.string();
  const RunReport rep = runScenario(cfg);
  CHECK(rep.status == "pass");
  CHECK(rep.cases == 3);
  CHECK(rep.passed == 3);
  CHECK(rep.worst_residual == 0.0);
}

TEST_CASE("variation suite passes every family") {
  const fs::path dir = freshDir("var");
  ScenarioConfig cfg;
  cfg.scenario = "verify_variations";
  cfg.output_dir = dir.string();
  const RunReport rep = runScenario(cfg);
  CHECK(rep.status == "pass");
  CHECK(rep.cases == 24);
  CHECK(rep.passed == 24);
  CHECK(rep.worst_residual <= 1e-6);
}

TEST_CASE("dissipation scenario defaults to the canonical shrinker") {
  const fs::path dir = freshDir("diss");
  ScenarioConfig cfg;
  cfg.scenario = "dissipation_check";
  cfg.output_dir = dir.string();
  const RunReport rep = runScenario(cfg);
  CHECK(rep.status == "pass");
  CHECK(rep.worst_residual <= 1e-8);

  ScenarioConfig pert = cfg;
  pert.scenario = "dissipation_check";
  pert.params = {{"a", 0.3}, {"c", -1.2}};
  pert.output_dir = freshDir("dissp").string();
  const RunReport rp = runScenario(pert);
  CHECK(rp.status == "pass");
  CHECK(rp.worst_residual > 1e-8);
  CHECK(rp.worst_residual <= 1e-4);
}

TEST_CASE("suite presets and overrides") {
  const ScenarioConfig c = suiteConfig("conformal", -1, -1, -1);
  CHECK(c.scenario == "verify_conformal");
  CHECK(c.params.at("cases") == 100);
  CHECK(c.params.at("degree") == 3);
  CHECK(c.params.at("seed") == 7);

  const ScenarioConfig c2 = suiteConfig("conformal", 10, 2, 99);
  CHECK(c2.params.at("cases") == 10);
  CHECK(c2.params.at("degree") == 2);
  CHECK(c2.params.at("seed") == 99);

  const ScenarioConfig m = suiteConfig("commutations", -1, -1, -1);
  CHECK(m.scenario == "verify_commutations");
  CHECK(m.params.at("cases") == 50);

  CHECK(suiteConfig("variations", -1, -1, -1).scenario == "verify_variations");
  CHECK(suiteConfig("dissipation", -1, -1, -1).scenario == "dissipation_check");
  CHECK_THROWS_AS(suiteConfig("nonsense", -1, -1, -1), ConfigInvalid);
}

TEST_CASE("report serialization carries the fixed key order") {
  RunReport rep;
  rep.scenario = "verify_conformal";
  rep.status = "pass";
  rep.cases = 4;
  rep.passed = 4;
  rep.worst_residual = 0.0;
  rep.seed = 11;
  const std::string json = reportToJson(rep);
  const auto pos = [&](const char* key) { return json.find(key); };
  CHECK(pos("scenario") < pos("status"));
  CHECK(pos("status") < pos("cases"));
  CHECK(pos("cases") < pos("passed"));
  CHECK(pos("passed") < pos("worst_residual"));
  CHECK(pos("worst_residual") < pos("seed"));
  CHECK(pos("seed") < pos("wall_ms"));
  CHECK(json.find("\"wall_ms\":0") != std::string::npos);
}

TEST_CASE("report table lists failing rows first and tolerates junk") {
  const fs::path dir = freshDir("table");
  {
    std::ofstream a(dir / "a_pass.json");
    a << R"({"scenario":"alpha","status":"pass","cases":3,"passed":3,)"
      << R"("worst_residual":0.0,"seed":1,"wall_ms":0})";
    std::ofstream b(dir / "b_fail.json");
    b << R"({"scenario":"beta","status":"fail","cases":3,"passed":1,)"
      << R"("worst_residual":0.5,"seed":2,"wall_ms":0})";
    std::ofstream junk(dir / "c_junk.json");
    junk << "{broken";
  }
  std::ostringstream out, err;
  CHECK(reportCommand(dir.string(), out, err) == 0);
  const std::string table = out.str();
  CHECK(table.find("beta") != std::string::npos);
  CHECK(table.find("alpha") != std::string::npos);
  CHECK(table.find("beta") < table.find("alpha"));
  CHECK(err.str().find("c_junk.json") != std::string::npos);

  const fs::path empty = freshDir("empty");
  std::ostringstream out2, err2;
  CHECK(reportCommand(empty.string(), out2, err2) == 0);
  CHECK(!err2.str().empty());
}
