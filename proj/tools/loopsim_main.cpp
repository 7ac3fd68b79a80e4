// Command-line entry point: simulate, grid, report.

#include <iostream>

#include <CLI11.hpp>

#include "loopsim/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Feedback-loop simulator for bandit recommenders"};
  app.require_subcommand(1);

  loopsim::SimulateOptions simulate;
  std::uint64_t seed = 0;
  auto* sim_cmd = app.add_subcommand("simulate", "Run a single trial");
  sim_cmd->add_option("config", simulate.config_path, "Trial config (JSON)")
      ->required();
  sim_cmd->add_option("--output-dir,-o", simulate.output_dir, "Output directory");
  auto* sim_seed = sim_cmd->add_option("--seed", seed, "Override the config seed");

  loopsim::GridOptions grid;
  auto* grid_cmd = app.add_subcommand("grid", "Run a parameter grid");
  grid_cmd->add_option("grid", grid.grid_path, "Grid spec (JSON)")->required();
  grid_cmd->add_option("--output-dir,-o", grid.output_dir, "Output directory");
  grid_cmd->add_option("--parallelism,-j", grid.parallelism, "Worker threads");
  auto* grid_seed = grid_cmd->add_option("--seed", seed, "Override the grid seed");

  loopsim::ReportOptions report;
  auto* report_cmd = app.add_subcommand("report", "Summarize a results CSV");
  report_cmd->add_option("results", report.results_csv, "results.csv")->required();
  report_cmd->add_flag("--strict", report.strict,
                       "Nonzero exit when a restart bound is violated");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : loopsim::kExitInvalidInput;
  }

  if (*sim_cmd) {
    if (*sim_seed) simulate.seed = seed;
    return loopsim::CmdSimulate(simulate, std::cout, std::cerr);
  }
  if (*grid_cmd) {
    if (*grid_seed) grid.seed = seed;
    return loopsim::CmdGrid(grid, std::cout, std::cerr);
  }
  return loopsim::CmdReport(report, std::cout, std::cerr);
}
