#include "loopsim/engine.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>

#include "loopsim/format.hpp"

namespace loopsim {

std::string CellParams::Key() const {
  std::string key = "M=" + std::to_string(item_count) +
                    ";l=" + std::to_string(select_count) +
                    ";policy=" + std::string(ToString(policy.kind));
  if (policy.kind == PolicyKind::kGreedy) {
    key += ";epsilon=" + FormatDouble(policy.epsilon);
  }
  key += ";model=" + std::string(ToString(model.kind));
  if (model.kind == ModelKind::kAdditiveNoise) {
    key += ";w=" + FormatDouble(model.noise_width);
  } else if (model.kind == ModelKind::kRestarts) {
    key += ";q=" + FormatDouble(model.restart_probability) +
           ";s=" + FormatDouble(model.restart_scale);
  }
  return key;
}

std::uint64_t CellParams::Id() const {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : Key()) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

void CellParams::Validate() const {
  if (item_count < 1) throw ConfigError("item_count", "must be >= 1");
  if (select_count < 1 || select_count >= item_count) {
    throw ConfigError("select_count",
                      "must satisfy 1 <= select_count < item_count (l < M)");
  }
  policy.Validate();
  model.Validate();
}

void TrialConfig::Validate() const {
  cell.Validate();
  if (snapshot_every < 1) throw ConfigError("snapshot_every", "must be >= 1");
}

std::uint64_t TrialConfig::Seed() const {
  return DeriveSeed(master_seed, cell.Id(), trial_index);
}

MetricSnapshot TrialTrace::MetricsAt(std::size_t step) const {
  if (step == 0) {
    return MetricSnapshot{0, 0.0,
                          *std::max_element(initial_interests.begin(),
                                            initial_interests.end()),
                          0, 0.0};
  }
  return steps.at(step - 1).metrics;
}

TrialTrace RunTrial(const TrialConfig& config, const TrialOverrides& overrides) {
  config.Validate();
  const CellParams& cell = config.cell;

  TrialTrace trace;
  trace.config = config;
  trace.seed = overrides.seed.value_or(config.Seed());
  Rng rng(trace.seed);

  InterestState state;
  if (overrides.initial_interests) {
    if (overrides.initial_interests->size() != cell.item_count) {
      throw std::invalid_argument("RunTrial: initial interests size != item_count");
    }
    state.initial = *overrides.initial_interests;
    state.mean = state.initial;
  } else {
    state = InitInterests(cell.item_count, rng);
  }
  PolicyState policy = PolicyInit(cell.policy, cell.item_count, state.initial);
  const bool is_optimal = cell.policy.kind == PolicyKind::kOptimal;

  trace.initial_interests = state.initial;
  trace.steps.reserve(config.horizon);
  trace.snapshots.push_back({0, state.mean, policy});

  long cumulative = 0;
  for (std::size_t t = 1; t <= config.horizon; ++t) {
    const double delta = SampleDelta(rng);
    Selection selection = Select(policy, cell.select_count, rng);
    const std::vector<double> perceived =
        Perceive(state, selection, cell.model, rng);
    Response response = SampleResponse(perceived, rng);
    Update(policy, selection, response);
    state = StepInterests(state, selection, response, delta, cell.model, rng);
    if (is_optimal) ObserveInterests(policy, state.mean);

    cumulative += response.total();
    MetricSnapshot metrics;
    metrics.step = t;
    metrics.loop_amplitude = LoopAmplitude(state);
    metrics.max_interest = MaxInterest(state);
    metrics.cumulative_reward = cumulative;
    metrics.regret = static_cast<double>(t * cell.select_count) -
                     static_cast<double>(cumulative);
    trace.steps.push_back(
        {std::move(selection), std::move(response), delta, metrics});

    if (t % config.snapshot_every == 0 || t == config.horizon) {
      trace.snapshots.push_back({t, state.mean, policy});
    }
  }
  return trace;
}

LeverStability DetectConstantBestLevers(const TrialTrace& trace,
                                        std::size_t from_step) {
  const std::size_t horizon = trace.steps.size();
  if (from_step < 1 || from_step >= horizon) {
    throw std::invalid_argument(
        "DetectConstantBestLevers: need 1 <= from_step < T");
  }
  auto at = [&](std::size_t t) -> const Selection& {
    return trace.steps[t - 1].selection;
  };

  LeverStability out;
  std::size_t matches = 0;
  for (std::size_t t = from_step + 1; t <= horizon; ++t) {
    if (at(t) == at(from_step)) ++matches;
  }
  out.stable_fraction =
      static_cast<double>(matches) / static_cast<double>(horizon - from_step);

  std::size_t start = horizon;
  while (start > from_step && at(start - 1) == at(horizon)) --start;
  if (start < horizon) {
    out.stabilized = true;
    out.stabilization_step = start;
  }
  return out;
}

void GridSpec::Validate() const {
  auto require = [](bool ok, const char* field, const char* message) {
    if (!ok) throw ConfigError(field, message);
  };
  require(!item_counts.empty(), "item_counts", "must not be empty");
  require(!select_counts.empty(), "select_counts", "must not be empty");
  require(!policies.empty(), "policies", "must not be empty");
  require(trials >= 1, "trials", "must be >= 1");
  const bool has_greedy =
      std::find(policies.begin(), policies.end(), PolicyKind::kGreedy) !=
      policies.end();
  require(!has_greedy || !epsilons.empty(), "epsilons", "must not be empty");
  if (model == ModelKind::kAdditiveNoise) {
    require(!noise_widths.empty(), "noise_widths", "must not be empty");
  }
  if (model == ModelKind::kRestarts) {
    require(!restart_probabilities.empty(), "restart_probabilities",
            "must not be empty");
    require(!restart_scales.empty(), "restart_scales", "must not be empty");
  }
  require(!Cells().empty(), "select_counts",
          "grid has no cell with select_count < item_count");
}

std::vector<CellParams> GridSpec::Cells() const {
  std::vector<InterestModelSpec> models;
  switch (model) {
    case ModelKind::kBasic:
      models.push_back(InterestModelSpec::Basic());
      break;
    case ModelKind::kAdditiveNoise:
      for (double w : noise_widths) {
        models.push_back(InterestModelSpec::AdditiveNoise(w));
      }
      break;
    case ModelKind::kRestarts:
      for (double q : restart_probabilities) {
        for (double s : restart_scales) {
          models.push_back(InterestModelSpec::Restarts(q, s));
        }
      }
      break;
  }

  std::vector<CellParams> cells;
  for (std::size_t m : item_counts) {
    for (std::size_t l : select_counts) {
      if (l < 1 || l >= m) continue;
      for (PolicyKind kind : policies) {
        std::vector<PolicySpec> specs;
        if (kind == PolicyKind::kGreedy) {
          for (double eps : epsilons) specs.push_back({kind, eps});
        } else {
          specs.push_back({kind, 0.0});
        }
        for (const PolicySpec& policy : specs) {
          for (const InterestModelSpec& model_spec : models) {
            cells.push_back({m, l, policy, model_spec});
          }
        }
      }
    }
  }
  return cells;
}

std::vector<std::size_t> GridSpec::ReportSteps() const {
  std::vector<std::size_t> steps;
  for (std::size_t c : checkpoints) {
    if (c <= horizon) steps.push_back(c);
  }
  steps.push_back(horizon);
  std::sort(steps.begin(), steps.end());
  steps.erase(std::unique(steps.begin(), steps.end()), steps.end());
  return steps;
}

namespace {

struct TaskOutcome {
  std::optional<TrialSummary> summary;
  std::string error;
};

TrialSummary Summarize(const TrialTrace& trace,
                       const std::vector<std::size_t>& report_steps) {
  TrialSummary summary;
  summary.trial_index = trace.config.trial_index;
  summary.seed = trace.seed;
  for (std::size_t step : report_steps) {
    summary.at_steps.push_back(trace.MetricsAt(step));
  }
  return summary;
}

}  // namespace

GridResult RunGrid(const GridSpec& grid, std::size_t parallelism) {
  grid.Validate();
  const std::vector<CellParams> cells = grid.Cells();
  GridResult result;
  result.report_steps = grid.ReportSteps();

  const std::size_t task_count = cells.size() * grid.trials;
  std::vector<TaskOutcome> outcomes(task_count);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t task = next++; task < task_count; task = next++) {
      TrialConfig config;
      config.cell = cells[task / grid.trials];
      config.horizon = grid.horizon;
      config.master_seed = grid.seed;
      config.trial_index = task % grid.trials;
      // Grid runs only keep scalar metrics.
      config.snapshot_every = std::max<std::size_t>(grid.horizon, 1);
      try {
        outcomes[task].summary = Summarize(RunTrial(config), result.report_steps);
      } catch (const std::exception& e) {
        outcomes[task].error = e.what();
      }
    }
  };

  const std::size_t threads =
      std::clamp<std::size_t>(parallelism, 1, std::max<std::size_t>(task_count, 1));
  {
    std::vector<std::jthread> pool;
    for (std::size_t i = 1; i < threads; ++i) pool.emplace_back(worker);
    worker();
  }

  for (std::size_t c = 0; c < cells.size(); ++c) {
    CellResult cell_result{cells[c], {}, {}};
    std::string error;
    for (std::size_t r = 0; r < grid.trials; ++r) {
      TaskOutcome& outcome = outcomes[c * grid.trials + r];
      if (!outcome.summary) {
        error = "trial " + std::to_string(r) + ": " + outcome.error;
        break;
      }
      cell_result.trials.push_back(std::move(*outcome.summary));
    }
    if (!error.empty()) {
      result.failures.push_back({cells[c], error});
      continue;
    }
    for (std::size_t k = 0; k < result.report_steps.size(); ++k) {
      for (std::string_view metric : kMetricNames) {
        std::vector<double> values;
        for (const TrialSummary& trial : cell_result.trials) {
          values.push_back(MetricValue(trial.at_steps[k], metric));
        }
        cell_result.rows.push_back({std::string(metric), result.report_steps[k],
                                    AggregateValues(values), values.size()});
      }
    }
    result.cells.push_back(std::move(cell_result));
  }
  return result;
}

}  // namespace loopsim
