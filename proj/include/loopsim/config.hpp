#pragma once

#include <filesystem>
#include <string_view>

#include <json.hpp>

#include "loopsim/engine.hpp"

namespace loopsim {

// Config files are JSON objects with flat keys and typed lists. Unknown keys
// are rejected so a misspelled parameter never silently falls back to its
// default. Every error is a ConfigError naming the key.
//
// Trial config keys:
//   item_count, select_count, horizon (required)
//   policy ("ts" | "greedy" | "optimal" | "random", required), epsilon
//   model ("basic" | "additive_noise" | "restarts", default basic),
//   noise_width, restart_probability, restart_scale
//   seed, trial_index, snapshot_every
//
// Grid keys:
//   item_counts, select_counts, policies (required lists), epsilons
//   model, noise_widths, restart_probabilities, restart_scales
//   trials, horizon, seed, checkpoints
//
// restart_probabilities may also be written as a log-spaced range,
// {"log10_start": -3, "log10_stop": 0, "count": 7}.

inline constexpr double kDefaultEpsilon = 0.1;

TrialConfig TrialConfigFromJson(const nlohmann::json& doc);
nlohmann::json ToJson(const TrialConfig& config);

GridSpec GridSpecFromJson(const nlohmann::json& doc);
nlohmann::json ToJson(const GridSpec& grid);

/// Reads and parses a file. Throws ConfigError (field "file") when the file
/// cannot be read or is not valid JSON.
nlohmann::json ReadJsonFile(const std::filesystem::path& path);

/// 10^start, ..., 10^stop at `count` evenly spaced exponents.
std::vector<double> LogSpaced(double log10_start, double log10_stop,
                              std::size_t count);

/// Default restart grid: q = 10^-3 ... 10^0 in half-decade steps, and
/// s in {0, 0.25, 0.5, 0.75, 0.9}.
std::vector<double> DefaultRestartProbabilities();
std::vector<double> DefaultRestartScales();

}  // namespace loopsim
