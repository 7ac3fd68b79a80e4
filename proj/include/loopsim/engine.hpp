#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "loopsim/interest.hpp"
#include "loopsim/metrics.hpp"
#include "loopsim/policy.hpp"

namespace loopsim {

/// The parameters that identify one grid cell. Trial seeds derive from these
/// values, never from the cell's position in a grid, and the horizon is not
/// part of the identity: a longer run of the same cell extends a shorter one.
struct CellParams {
  std::size_t item_count = 2;
  std::size_t select_count = 1;
  PolicySpec policy;
  InterestModelSpec model;

  /// Canonical text form, e.g. "M=10;l=5;policy=ts;model=additive_noise;w=3".
  /// Only fields belonging to the chosen policy and model appear.
  std::string Key() const;
  /// 64-bit FNV-1a hash of Key().
  std::uint64_t Id() const;
  void Validate() const;

  bool operator==(const CellParams&) const = default;
};

struct TrialConfig {
  CellParams cell;
  std::size_t horizon = 0;
  std::uint64_t master_seed = 0;
  std::uint64_t trial_index = 0;
  std::size_t snapshot_every = 50;

  /// Throws ConfigError naming the first offending field.
  void Validate() const;
  std::uint64_t Seed() const;
};

/// What happened at step t (1-based): the shown items, the clicks, the
/// interest step size, and the metrics of the state after the step.
struct StepRecord {
  Selection selection;
  Response response;
  double delta = 0.0;
  MetricSnapshot metrics;
};

/// Full interest vector and policy state after `step` steps.
struct StateSnapshot {
  std::size_t step = 0;
  std::vector<double> mean_interests;
  PolicyState policy;
};

struct TrialTrace {
  TrialConfig config;
  std::uint64_t seed = 0;
  std::vector<double> initial_interests;
  std::vector<StepRecord> steps;          // steps[t - 1] is step t
  std::vector<StateSnapshot> snapshots;   // t = 0, every snapshot_every, t = T

  /// Metrics after `step` steps; step 0 is the initial state.
  MetricSnapshot MetricsAt(std::size_t step) const;
  MetricSnapshot Final() const { return MetricsAt(steps.size()); }
};

/// Replaces parts of a trial's setup; used for scenario runs and for
/// comparing models on equal random streams.
struct TrialOverrides {
  std::optional<std::uint64_t> seed;
  /// Fixed starting interests; the initial draw is then skipped.
  std::optional<std::vector<double>> initial_interests;
};

/// Runs one trial from one stream seeded by config.Seed(). After the initial
/// interests, each step draws in this order: delta, policy selection,
/// perception noise, clicks, then restarts inside the interest update. The
/// optimal policy observes the updated interests at the end of each step.
TrialTrace RunTrial(const TrialConfig& config, const TrialOverrides& overrides = {});

struct LeverStability {
  bool stabilized = false;
  std::optional<std::size_t> stabilization_step;
  double stable_fraction = 0.0;
};

/// Checks whether the selected set stops changing after `from_step`.
///
/// stabilization_step is the smallest t0 >= from_step such that every later
/// selection equals A_t0; the trace counts as stabilized when that t0 is
/// before the last step. stable_fraction is the share of steps in
/// (from_step, T] whose selection equals A_from_step. Requires
/// 1 <= from_step < T.
LeverStability DetectConstantBestLevers(const TrialTrace& trace,
                                        std::size_t from_step);

struct GridSpec {
  std::vector<std::size_t> item_counts;
  std::vector<std::size_t> select_counts;
  std::vector<PolicyKind> policies;
  std::vector<double> epsilons{0.1};  // swept for greedy only
  ModelKind model = ModelKind::kBasic;
  std::vector<double> noise_widths{0.0};
  std::vector<double> restart_probabilities{0.0};
  std::vector<double> restart_scales{0.0};
  std::size_t trials = 30;
  std::size_t horizon = 2000;
  std::uint64_t seed = 0;
  /// Extra steps (besides the horizon) at which metrics are aggregated.
  std::vector<std::size_t> checkpoints;

  /// Structural checks only; per-value range problems surface as cell
  /// failures in RunGrid.
  void Validate() const;
  /// Cartesian product of the sweeps, skipping cells with l >= M.
  std::vector<CellParams> Cells() const;
  /// Sorted, deduplicated checkpoints within the horizon, plus the horizon.
  std::vector<std::size_t> ReportSteps() const;

  bool operator==(const GridSpec&) const = default;
};

struct TrialSummary {
  std::uint64_t trial_index = 0;
  std::uint64_t seed = 0;
  std::vector<MetricSnapshot> at_steps;  // aligned with GridSpec::ReportSteps()
};

struct MetricRow {
  std::string metric;
  std::size_t step = 0;
  Aggregate stats;
  std::size_t trials = 0;
};

struct CellResult {
  CellParams cell;
  std::vector<TrialSummary> trials;
  std::vector<MetricRow> rows;
};

struct CellFailure {
  CellParams cell;
  std::string message;
};

struct GridResult {
  std::vector<std::size_t> report_steps;
  std::vector<CellResult> cells;
  std::vector<CellFailure> failures;
};

/// Runs every (cell, trial) pair once on `parallelism` worker threads. The
/// result does not depend on the degree of parallelism or scheduling order.
GridResult RunGrid(const GridSpec& grid, std::size_t parallelism);

}  // namespace loopsim
