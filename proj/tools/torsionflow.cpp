// Command-line front end: run a configured scenario, verify a named suite,
// or print the report table for a directory of report JSON artifacts.
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "torsionflow/runner.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitAssertion = 2;
constexpr int kExitConfig = 3;

int finish(const torsionflow::RunReport& rep) {
  std::cout << torsionflow::reportToJson(rep) << "\n";
  return torsionflow::allCasesPassed(rep) ? kExitPass : kExitAssertion;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudohermitian torsion-flow engine"};
  app.require_subcommand(1);

  std::string configPath, outDir, suite, reportDir;
  long cases = -1, degree = -1, seed = -1;
  bool timings = false;

  CLI::App* run = app.add_subcommand("run", "Execute a scenario config");
  run->add_option("--config", configPath, "Path to a JSON scenario config")
      ->required();
  run->add_option("--out", outDir, "Override the config's output directory");
  run->add_flag("--timings", timings, "Record wall-clock time in the report");

  CLI::App* verify = app.add_subcommand("verify", "Run a verification suite");
  verify
      ->add_option("--suite", suite,
                   "conformal | commutations | variations | dissipation")
      ->required();
  verify->add_option("--cases", cases, "Number of randomized cases");
  verify->add_option("--degree", degree, "Polynomial degree bound");
  verify->add_option("--seed", seed, "Random seed");
  verify->add_option("--out", outDir, "Output directory for artifacts");
  verify->add_flag("--timings", timings, "Record wall-clock time in the report");

  CLI::App* report = app.add_subcommand("report", "Summarize report artifacts");
  report->add_option("dir", reportDir, "Directory containing report JSON files")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitPass : kExitConfig;
  }

  try {
    if (run->parsed()) {
      std::ifstream in(configPath, std::ios::binary);
      if (!in) {
        throw torsionflow::ConfigInvalid("cannot open config file '" +
                                         configPath + "'");
      }
      std::ostringstream ss;
      ss << in.rdbuf();
      torsionflow::ScenarioConfig cfg = torsionflow::parseConfig(ss.str());
      if (!outDir.empty()) cfg.output_dir = outDir;
      cfg.timings = timings;
      return finish(torsionflow::runScenario(cfg));
    }
    if (verify->parsed()) {
      torsionflow::ScenarioConfig cfg =
          torsionflow::suiteConfig(suite, cases, degree, seed);
      if (!outDir.empty()) cfg.output_dir = outDir;
      cfg.timings = timings;
      return finish(torsionflow::runScenario(cfg));
    }
    return torsionflow::reportCommand(reportDir, std::cout, std::cerr);
  } catch (const torsionflow::ConfigInvalid& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitAssertion;
  }
}
