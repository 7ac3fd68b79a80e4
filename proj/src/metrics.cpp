#include "loopsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace loopsim {

double MetricValue(const MetricSnapshot& snapshot, std::string_view metric) {
  if (metric == "loop_amplitude") return snapshot.loop_amplitude;
  if (metric == "max_interest") return snapshot.max_interest;
  if (metric == "cumulative_reward") {
    return static_cast<double>(snapshot.cumulative_reward);
  }
  if (metric == "regret") return snapshot.regret;
  throw std::invalid_argument("unknown metric '" + std::string(metric) + "'");
}

double LoopAmplitude(const InterestState& state) {
  double sum = 0.0;
  for (std::size_t i = 0; i < state.mean.size(); ++i) {
    const double d = state.mean[i] - state.initial.at(i);
    sum += d * d;
  }
  return std::sqrt(sum);
}

double MaxInterest(const InterestState& state) {
  if (state.mean.empty()) throw std::invalid_argument("MaxInterest: no items");
  return *std::max_element(state.mean.begin(), state.mean.end());
}

double RestartBound(double q, double s, double delta_mean) {
  if (!(q >= 0.0 && q <= 1.0)) {
    throw ConfigError("restart_probability", "must lie in [0, 1]");
  }
  if (!(s >= 0.0 && s <= 1.0)) {
    throw ConfigError("restart_scale", "must lie in [0, 1]");
  }
  if (!(delta_mean > 0.0)) throw ConfigError("delta_mean", "must be > 0");
  if (q == 0.0 || s == 1.0) return std::numeric_limits<double>::infinity();
  return delta_mean * (1.0 / ((1.0 - s) * q) - 1.0);
}

double GrowthCeiling(std::size_t t, double delta_mean, double initial_max) {
  return initial_max + static_cast<double>(t) * delta_mean;
}

BoundCheck CheckRestartBound(double mean, double half_width,
                             double restart_bound, double growth_ceiling) {
  BoundCheck check;
  check.limit = std::min(restart_bound, growth_ceiling) + 2.0 * half_width;
  check.applicable = mean > 1.0;
  check.satisfied = !check.applicable || mean <= check.limit;
  return check;
}

Aggregate AggregateValues(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("AggregateValues: no values");
  // Summing in sorted order makes the result independent of input order.
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const auto n = static_cast<double>(sorted.size());
  Aggregate out;
  double sum = 0.0;
  for (double v : sorted) sum += v;
  out.mean = sum / n;
  out.min = sorted.front();
  out.max = sorted.back();
  // Rounding can push the mean of identical values a hair outside [min, max].
  out.mean = std::clamp(out.mean, out.min, out.max);
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : sorted) ss += (v - out.mean) * (v - out.mean);
    const double stdev = std::sqrt(ss / (n - 1.0));
    out.half_width = kZ95 * stdev / std::sqrt(n);
  }
  return out;
}

}  // namespace loopsim
