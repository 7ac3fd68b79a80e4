#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>

namespace loopsim {

enum ExitCode : int {
  kExitOk = 0,
  kExitRuntime = 1,
  kExitInvalidInput = 2,
  kExitPartialGrid = 3,
};

struct SimulateOptions {
  std::filesystem::path config_path;
  std::filesystem::path output_dir = ".";
  std::optional<std::uint64_t> seed;
};

/// Runs one trial; writes trace.csv, snapshots.csv and manifest.json.
int CmdSimulate(const SimulateOptions& options, std::ostream& out,
                std::ostream& err);

struct GridOptions {
  std::filesystem::path grid_path;
  std::filesystem::path output_dir = ".";
  std::size_t parallelism = 1;
  std::optional<std::uint64_t> seed;
};

/// Runs a grid; writes results.csv, trials.csv, manifest.json and, when any
/// cell failed, failures.csv.
int CmdGrid(const GridOptions& options, std::ostream& out, std::ostream& err);

struct ReportOptions {
  std::filesystem::path results_csv;
  bool strict = false;
};

/// Prints one summary line per cell. With `strict`, a violated restart bound
/// makes the exit code kExitRuntime.
int CmdReport(const ReportOptions& options, std::ostream& out,
              std::ostream& err);

}  // namespace loopsim
