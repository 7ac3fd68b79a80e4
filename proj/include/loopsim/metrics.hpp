#pragma once

#include <cstddef>
#include <span>
#include <string_view>

#include "loopsim/interest.hpp"

namespace loopsim {

/// Observables of one interest state at step t.
struct MetricSnapshot {
  std::size_t step = 0;
  double loop_amplitude = 0.0;  // ||mu_t - mu_0||_2
  double max_interest = 0.0;    // max_i mu_t^i
  long cumulative_reward = 0;   // clicks so far
  double regret = 0.0;          // t * l - cumulative_reward
};

inline constexpr std::string_view kMetricNames[] = {
    "loop_amplitude", "max_interest", "cumulative_reward", "regret"};

double MetricValue(const MetricSnapshot& snapshot, std::string_view metric);

/// Euclidean distance of the current interests from the initial ones.
double LoopAmplitude(const InterestState& state);
double MaxInterest(const InterestState& state);

/// Steady-state ceiling on the expected interest of a best lever under
/// restarts, delta_mean * (1 / ((1 - s) q) - 1).
///
/// Returns +infinity when q == 0 or s == 1, where restarts never pull
/// interest back. Throws ConfigError for q or s outside [0, 1] or a
/// nonpositive delta_mean.
double RestartBound(double q, double s, double delta_mean = kMeanDelta);

/// Finite-horizon ceiling: initial_max + t * delta_mean.
double GrowthCeiling(std::size_t t, double delta_mean, double initial_max);

/// Outcome of comparing a cell's mean max interest with the restart bound.
struct BoundCheck {
  bool applicable = false;  // restarts cell whose mean left the initial range
  bool satisfied = true;
  double limit = 0.0;       // min(bound, ceiling) + 2 * half_width
};

/// The bound only constrains interest that has grown past the initial range
/// [-1, 1]; below that the check is not applicable and counts as satisfied.
BoundCheck CheckRestartBound(double mean, double half_width,
                             double restart_bound, double growth_ceiling);

struct Aggregate {
  double mean = 0.0;
  double half_width = 0.0;  // 95% normal-approximation half width
  double min = 0.0;
  double max = 0.0;
};

inline constexpr double kZ95 = 1.96;

/// Sample mean and kZ95 * stdev / sqrt(R) with the R - 1 divisor; the half
/// width is 0 for a single value. Throws on empty input.
Aggregate AggregateValues(std::span<const double> values);

}  // namespace loopsim
