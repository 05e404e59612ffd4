#ifndef TORSIONFLOW_RUNNER_HPP
#define TORSIONFLOW_RUNNER_HPP

#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>

namespace torsionflow {

struct ConfigInvalid : std::runtime_error {
  explicit ConfigInvalid(const std::string& what) : std::runtime_error(what) {}
};

/// One run request: a scenario name, its numeric parameters, and where the
/// artifacts (trajectory CSV, report JSON) go.
struct ScenarioConfig {
  std::string scenario;
  std::map<std::string, double> params;
  std::string output_dir = "out";
  /// When false (the default) the report's wall_ms field is written as 0 so
  /// that identical configurations produce byte-identical artifacts.
  bool timings = false;
};

/// Parses a JSON config document {"scenario": str, "params": {..}, "output_dir": str}.
ScenarioConfig parseConfig(const std::string& json_text);

/// Built-in configuration of a named verification suite (conformal,
/// commutations, variations, dissipation), with optional overrides
/// (negative values keep the suite default).
ScenarioConfig suiteConfig(const std::string& suite, long cases, long degree,
                           long seed);

struct RunReport {
  std::string scenario;
  std::string status;  // "pass" | "fail" | "halted(<reason>)"
  long cases = 0;
  long passed = 0;
  double worst_residual = 0.0;
  long seed = 0;
  long wall_ms = 0;
};

/// Executes the scenario, writes its artifacts under output_dir, and
/// returns the report (also written as <scenario>.json). Throws
/// ConfigInvalid for unknown scenarios or missing required parameters.
RunReport runScenario(const ScenarioConfig& cfg);

/// The fixed report serialization
/// {"scenario","status","cases","passed","worst_residual","seed","wall_ms"}.
std::string reportToJson(const RunReport& rep);

/// True when every case-level assertion of the run passed (the exit-0
/// condition; an extinction halt with clean samples still qualifies).
bool allCasesPassed(const RunReport& rep);

/// Prints the report table for a directory of report JSON files, failing
/// rows first. Missing or empty directories warn and yield an empty table.
/// Always returns 0 (read-only).
int reportCommand(const std::string& dir, std::ostream& out, std::ostream& err);

}  // namespace torsionflow

#endif
