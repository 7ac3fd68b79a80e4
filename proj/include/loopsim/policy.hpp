#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "loopsim/interest.hpp"
#include "loopsim/random.hpp"

namespace loopsim {

enum class PolicyKind { kThompson, kGreedy, kOptimal, kRandom };

/// Identifiers used in configs and CSVs: ts, greedy, optimal, random.
std::string_view ToString(PolicyKind kind);
PolicyKind ParsePolicyKind(std::string_view name);

/// Beta posterior per item, starting from Beta(1, 1).
struct ThompsonState {
  std::vector<double> alpha;
  std::vector<double> beta;
};

/// Epsilon-greedy pull and reward counters.
struct GreedyState {
  double epsilon = 0.1;
  std::vector<long> pulls;
  std::vector<long> rewards;
};

/// Oracle policy: knows the user's mean interests.
struct OptimalState {
  std::vector<double> interest_view;
};

struct RandomState {
  std::size_t item_count = 0;
};

using PolicyState =
    std::variant<ThompsonState, GreedyState, OptimalState, RandomState>;

PolicyKind KindOf(const PolicyState& policy);
std::size_t ItemCount(const PolicyState& policy);

struct PolicySpec {
  PolicyKind kind = PolicyKind::kThompson;
  double epsilon = 0.1;  // greedy only

  void Validate() const;
  bool operator==(const PolicySpec&) const = default;
};

/// Fresh policy state for `item_count` items. The optimal policy's view starts
/// at `initial_interests`, which must then have `item_count` entries.
PolicyState PolicyInit(const PolicySpec& spec, std::size_t item_count,
                       std::span<const double> initial_interests = {});

/// Picks `select_count` distinct items (returned ascending).
///
/// Rankings break ties toward the lower item index. Thompson sampling draws
/// one Beta variate per item in index order; greedy draws one exploration
/// coin per step, then `select_count` indices when exploring.
Selection Select(const PolicyState& policy, std::size_t select_count, Rng& rng);

/// Applies the learning update for the shown items. Optimal and random are
/// unchanged.
void Update(PolicyState& policy, const Selection& selection,
            const Response& response);

/// Refreshes the optimal policy's view of the mean interests.
void ObserveInterests(PolicyState& policy, std::span<const double> interests);

/// Indices of the `count` largest scores, ties to the lower index, ascending.
std::vector<std::size_t> TopIndices(std::span<const double> scores,
                                    std::size_t count);

/// `count` distinct indices drawn uniformly from [0, n), ascending.
std::vector<std::size_t> SampleWithoutReplacement(std::size_t n,
                                                  std::size_t count, Rng& rng);

}  // namespace loopsim
