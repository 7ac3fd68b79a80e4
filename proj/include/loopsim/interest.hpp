#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "loopsim/random.hpp"

namespace loopsim {

/// Raised for invalid user-supplied parameters. `field()` names the offending
/// configuration key.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// Largest per-step interest change; delta is drawn from Uniform[0, kMaxDelta].
inline constexpr double kMaxDelta = 0.01;
/// Expected per-step interest change, E[delta].
inline constexpr double kMeanDelta = kMaxDelta / 2;

/// The user's interest in each item.
struct InterestState {
  std::vector<double> mean;     // current mean interest, one per item
  std::vector<double> initial;  // interests at t = 0, never modified

  std::size_t item_count() const { return mean.size(); }
};

enum class ModelKind { kBasic, kAdditiveNoise, kRestarts };

std::string_view ToString(ModelKind kind);
ModelKind ParseModelKind(std::string_view name);

/// Which interest-evolution rule a trial uses. Fields that do not belong to
/// `kind` are ignored.
struct InterestModelSpec {
  ModelKind kind = ModelKind::kBasic;
  double noise_width = 0.0;          // w, additive noise only
  double restart_probability = 0.0;  // q, restarts only
  double restart_scale = 0.0;        // s, restarts only

  static InterestModelSpec Basic() { return {}; }
  static InterestModelSpec AdditiveNoise(double w) {
    return {ModelKind::kAdditiveNoise, w, 0.0, 0.0};
  }
  static InterestModelSpec Restarts(double q, double s) {
    return {ModelKind::kRestarts, 0.0, q, s};
  }

  /// Throws ConfigError when a field used by `kind` is out of range.
  void Validate() const;

  bool operator==(const InterestModelSpec&) const = default;
};

/// Items shown at one step, in ascending index order.
struct Selection {
  std::vector<std::size_t> items;

  std::size_t size() const { return items.size(); }
  bool operator==(const Selection&) const = default;
};

/// Clicks aligned with Selection::items; each entry is 0 or 1.
struct Response {
  std::vector<int> clicks;

  std::size_t size() const { return clicks.size(); }
  int total() const;
  bool operator==(const Response&) const = default;
};

/// Logistic link, evaluated without overflow for any finite x.
double Sigmoid(double x);

/// Draws M initial interests i.i.d. Uniform[-1, 1].
InterestState InitInterests(std::size_t item_count, Rng& rng);

/// Draws the step's interest change, Uniform[0, kMaxDelta].
double SampleDelta(Rng& rng);

/// Interest the user acts on at this step, one value per shown item. Under
/// additive noise each shown item gets a fresh Uniform[-w, w] offset, drawn in
/// selection order; other models return the mean unchanged.
std::vector<double> Perceive(const InterestState& state,
                             const Selection& selection,
                             const InterestModelSpec& model, Rng& rng);

/// One independent Bernoulli(Sigmoid(p)) click per perceived value.
Response SampleResponse(std::span<const double> perceived, Rng& rng);

/// Advances the mean interests by one step.
///
/// Shown items move by +delta when clicked and -delta otherwise. Under the
/// restarts model every item (shown or not) then independently restarts with
/// probability q, becoming (1 - s) * nu + s * (mu + increment) with nu a fresh
/// Uniform[-1, 1] draw.
///
/// Stream use in the restart branch: nothing is drawn when q == 0 or s == 1
/// (restarts cannot change anything), the coin is skipped when q == 1, and nu
/// is drawn only on restart events. Per item, in index order.
InterestState StepInterests(const InterestState& state,
                            const Selection& selection,
                            const Response& response, double delta,
                            const InterestModelSpec& model, Rng& rng);

}  // namespace loopsim
