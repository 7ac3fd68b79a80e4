#include "loopsim/interest.hpp"

#include <cmath>
#include <numeric>

namespace loopsim {

std::string_view ToString(ModelKind kind) {
  switch (kind) {
    case ModelKind::kBasic:
      return "basic";
    case ModelKind::kAdditiveNoise:
      return "additive_noise";
    case ModelKind::kRestarts:
      return "restarts";
  }
  return "unknown";
}

ModelKind ParseModelKind(std::string_view name) {
  if (name == "basic") return ModelKind::kBasic;
  if (name == "additive_noise") return ModelKind::kAdditiveNoise;
  if (name == "restarts") return ModelKind::kRestarts;
  throw ConfigError("model", "unknown model kind '" + std::string(name) +
                                 "' (expected basic, additive_noise or restarts)");
}

void InterestModelSpec::Validate() const {
  switch (kind) {
    case ModelKind::kBasic:
      break;
    case ModelKind::kAdditiveNoise:
      if (!(noise_width >= 0.0) || !std::isfinite(noise_width)) {
        throw ConfigError("noise_width", "must be a finite value >= 0");
      }
      break;
    case ModelKind::kRestarts:
      if (!(restart_probability >= 0.0 && restart_probability <= 1.0)) {
        throw ConfigError("restart_probability", "must lie in [0, 1]");
      }
      if (!(restart_scale >= 0.0 && restart_scale <= 1.0)) {
        throw ConfigError("restart_scale", "must lie in [0, 1]");
      }
      break;
  }
}

int Response::total() const {
  return std::accumulate(clicks.begin(), clicks.end(), 0);
}

double Sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

InterestState InitInterests(std::size_t item_count, Rng& rng) {
  if (item_count == 0) throw ConfigError("item_count", "must be >= 1");
  InterestState state;
  state.initial.reserve(item_count);
  for (std::size_t i = 0; i < item_count; ++i) {
    state.initial.push_back(rng.Uniform(-1.0, 1.0));
  }
  state.mean = state.initial;
  return state;
}

double SampleDelta(Rng& rng) { return rng.Uniform(0.0, kMaxDelta); }

std::vector<double> Perceive(const InterestState& state,
                             const Selection& selection,
                             const InterestModelSpec& model, Rng& rng) {
  std::vector<double> perceived;
  perceived.reserve(selection.size());
  const bool noisy =
      model.kind == ModelKind::kAdditiveNoise && model.noise_width > 0.0;
  for (std::size_t item : selection.items) {
    double value = state.mean.at(item);
    if (noisy) value += rng.Uniform(-model.noise_width, model.noise_width);
    perceived.push_back(value);
  }
  return perceived;
}

Response SampleResponse(std::span<const double> perceived, Rng& rng) {
  Response response;
  response.clicks.reserve(perceived.size());
  for (double value : perceived) {
    response.clicks.push_back(rng.Bernoulli(Sigmoid(value)) ? 1 : 0);
  }
  return response;
}

InterestState StepInterests(const InterestState& state,
                            const Selection& selection,
                            const Response& response, double delta,
                            const InterestModelSpec& model, Rng& rng) {
  if (selection.size() != response.size()) {
    throw std::invalid_argument(
        "StepInterests: selection and response lengths differ");
  }
  InterestState next = state;
  for (std::size_t k = 0; k < selection.size(); ++k) {
    next.mean.at(selection.items[k]) += response.clicks[k] ? delta : -delta;
  }

  if (model.kind != ModelKind::kRestarts) return next;
  const double q = model.restart_probability;
  const double s = model.restart_scale;
  if (q <= 0.0 || s >= 1.0) return next;

  for (double& mu : next.mean) {
    const bool restart = q >= 1.0 || rng.Bernoulli(q);
    if (!restart) continue;
    const double fresh = rng.Uniform(-1.0, 1.0);
    mu = (1.0 - s) * fresh + s * mu;
  }
  return next;
}

}  // namespace loopsim
