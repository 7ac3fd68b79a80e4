#include "loopsim/cli.hpp"

#include <fstream>

#include "loopsim/config.hpp"
#include "loopsim/output.hpp"
#include "loopsim/report.hpp"

namespace loopsim {

namespace fs = std::filesystem;

namespace {

void WriteManifest(const fs::path& dir, RunManifest manifest) {
  manifest.finished = UtcTimestamp();
  manifest.files.push_back("manifest.json");
  WriteTextFile(dir / "manifest.json", manifest.ToJson().dump(2) + "\n");
}

}  // namespace

int CmdSimulate(const SimulateOptions& options, std::ostream& out,
                std::ostream& err) {
  RunManifest manifest;
  manifest.command = "simulate";
  manifest.started = UtcTimestamp();
  TrialConfig config;
  try {
    config = TrialConfigFromJson(ReadJsonFile(options.config_path));
    if (options.seed) config.master_seed = *options.seed;
  } catch (const ConfigError& e) {
    err << "invalid config: " << e.what() << "\n";
    return kExitInvalidInput;
  }
  try {
    const TrialTrace trace = RunTrial(config);
    fs::create_directories(options.output_dir);
    WriteTextFile(options.output_dir / "trace.csv", TraceCsv(trace));
    WriteTextFile(options.output_dir / "snapshots.csv", SnapshotsCsv(trace));
    manifest.config = ToJson(config);
    manifest.files = {"trace.csv", "snapshots.csv"};
    WriteManifest(options.output_dir, manifest);
    const MetricSnapshot final = trace.Final();
    out << "simulated " << config.horizon << " steps (seed " << trace.seed
        << "): loop_amplitude=" << final.loop_amplitude
        << " max_interest=" << final.max_interest
        << " cumulative_reward=" << final.cumulative_reward << "\n";
  } catch (const ConfigError& e) {
    err << "invalid config: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    err << "simulation failed: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}

int CmdGrid(const GridOptions& options, std::ostream& out, std::ostream& err) {
  RunManifest manifest;
  manifest.command = "grid";
  manifest.started = UtcTimestamp();
  GridSpec grid;
  try {
    grid = GridSpecFromJson(ReadJsonFile(options.grid_path));
    if (options.seed) grid.seed = *options.seed;
  } catch (const ConfigError& e) {
    err << "invalid grid: " << e.what() << "\n";
    return kExitInvalidInput;
  }
  if (options.parallelism < 1) {
    err << "invalid grid: parallelism: must be >= 1\n";
    return kExitInvalidInput;
  }
  try {
    const GridResult result = RunGrid(grid, options.parallelism);
    fs::create_directories(options.output_dir);
    WriteTextFile(options.output_dir / "results.csv", ResultsCsv(result));
    WriteTextFile(options.output_dir / "trials.csv", TrialsCsv(result));
    manifest.config = ToJson(grid);
    manifest.files = {"results.csv", "trials.csv"};
    if (!result.failures.empty()) {
      WriteTextFile(options.output_dir / "failures.csv", FailuresCsv(result));
      manifest.files.push_back("failures.csv");
      for (const CellFailure& failure : result.failures) {
        manifest.failures.push_back(failure.cell.Key() + ": " + failure.message);
      }
    }
    WriteManifest(options.output_dir, manifest);
    out << "ran " << result.cells.size() + result.failures.size() << " cells x "
        << grid.trials << " trials, T=" << grid.horizon << "\n";
    if (!result.failures.empty()) {
      err << result.failures.size() << " cell(s) failed:\n";
      for (const std::string& line : manifest.failures) err << "  " << line << "\n";
      return kExitPartialGrid;
    }
  } catch (const ConfigError& e) {
    err << "invalid grid: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    err << "grid failed: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}

int CmdReport(const ReportOptions& options, std::ostream& out,
              std::ostream& err) {
  std::ifstream in(options.results_csv);
  if (!in) {
    err << "cannot open " << options.results_csv << "\n";
    return kExitInvalidInput;
  }
  std::vector<ResultsRow> rows;
  try {
    rows = ParseResultsCsv(in);
  } catch (const ConfigError& e) {
    err << "malformed results: " << e.what() << "\n";
    return kExitInvalidInput;
  }
  int violations = 0;
  for (const ReportLine& line : BuildReport(rows)) {
    out << line.text << "\n";
    violations += line.violated ? 1 : 0;
  }
  if (violations > 0) {
    err << violations << " cell(s) exceed the restart bound\n";
    if (options.strict) return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace loopsim
