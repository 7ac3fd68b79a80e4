#include "loopsim/policy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace loopsim {

std::string_view ToString(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::kThompson:
      return "ts";
    case PolicyKind::kGreedy:
      return "greedy";
    case PolicyKind::kOptimal:
      return "optimal";
    case PolicyKind::kRandom:
      return "random";
  }
  return "unknown";
}

PolicyKind ParsePolicyKind(std::string_view name) {
  if (name == "ts") return PolicyKind::kThompson;
  if (name == "greedy") return PolicyKind::kGreedy;
  if (name == "optimal") return PolicyKind::kOptimal;
  if (name == "random") return PolicyKind::kRandom;
  throw ConfigError("policy", "unknown policy '" + std::string(name) +
                                  "' (expected ts, greedy, optimal or random)");
}

PolicyKind KindOf(const PolicyState& policy) {
  return static_cast<PolicyKind>(policy.index());
}

std::size_t ItemCount(const PolicyState& policy) {
  struct Visitor {
    std::size_t operator()(const ThompsonState& s) const { return s.alpha.size(); }
    std::size_t operator()(const GreedyState& s) const { return s.pulls.size(); }
    std::size_t operator()(const OptimalState& s) const {
      return s.interest_view.size();
    }
    std::size_t operator()(const RandomState& s) const { return s.item_count; }
  };
  return std::visit(Visitor{}, policy);
}

void PolicySpec::Validate() const {
  if (kind == PolicyKind::kGreedy && !(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw ConfigError("epsilon", "must lie in [0, 1]");
  }
}

PolicyState PolicyInit(const PolicySpec& spec, std::size_t item_count,
                       std::span<const double> initial_interests) {
  if (item_count == 0) throw ConfigError("item_count", "must be >= 1");
  spec.Validate();
  switch (spec.kind) {
    case PolicyKind::kThompson:
      return ThompsonState{std::vector<double>(item_count, 1.0),
                           std::vector<double>(item_count, 1.0)};
    case PolicyKind::kGreedy:
      return GreedyState{spec.epsilon, std::vector<long>(item_count, 0),
                         std::vector<long>(item_count, 0)};
    case PolicyKind::kOptimal: {
      if (initial_interests.size() != item_count) {
        throw std::invalid_argument(
            "PolicyInit: optimal policy needs the initial interests");
      }
      return OptimalState{
          std::vector<double>(initial_interests.begin(), initial_interests.end())};
    }
    case PolicyKind::kRandom:
      return RandomState{item_count};
  }
  throw std::invalid_argument("PolicyInit: unknown policy kind");
}

std::vector<std::size_t> TopIndices(std::span<const double> scores,
                                    std::size_t count) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  count = std::min(count, order.size());
  std::partial_sort(order.begin(), order.begin() + count, order.end(),
                    [&](std::size_t a, std::size_t b) {
                      if (scores[a] != scores[b]) return scores[a] > scores[b];
                      return a < b;
                    });
  order.resize(count);
  std::sort(order.begin(), order.end());
  return order;
}

std::vector<std::size_t> SampleWithoutReplacement(std::size_t n,
                                                  std::size_t count, Rng& rng) {
  // Partial Fisher-Yates.
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  count = std::min(count, n);
  for (std::size_t k = 0; k < count; ++k) {
    std::swap(pool[k], pool[k + rng.Index(n - k)]);
  }
  pool.resize(count);
  std::sort(pool.begin(), pool.end());
  return pool;
}

namespace {

void CheckSelectCount(std::size_t item_count, std::size_t select_count) {
  if (select_count < 1 || select_count >= item_count) {
    throw ConfigError("select_count",
                      "must satisfy 1 <= select_count < item_count (got " +
                          std::to_string(select_count) + " of " +
                          std::to_string(item_count) + ")");
  }
}

}  // namespace

Selection Select(const PolicyState& policy, std::size_t select_count,
                 Rng& rng) {
  const std::size_t item_count = ItemCount(policy);
  CheckSelectCount(item_count, select_count);

  struct Visitor {
    std::size_t l;
    Rng& rng;

    Selection operator()(const ThompsonState& s) const {
      std::vector<double> sampled(s.alpha.size());
      for (std::size_t i = 0; i < sampled.size(); ++i) {
        sampled[i] = rng.Beta(s.alpha[i], s.beta[i]);
      }
      return {TopIndices(sampled, l)};
    }
    Selection operator()(const GreedyState& s) const {
      if (rng.Bernoulli(s.epsilon)) {
        return {SampleWithoutReplacement(s.pulls.size(), l, rng)};
      }
      std::vector<double> means(s.pulls.size(), 0.0);
      for (std::size_t i = 0; i < means.size(); ++i) {
        if (s.pulls[i] > 0) {
          means[i] = static_cast<double>(s.rewards[i]) /
                     static_cast<double>(s.pulls[i]);
        }
      }
      return {TopIndices(means, l)};
    }
    Selection operator()(const OptimalState& s) const {
      return {TopIndices(s.interest_view, l)};
    }
    Selection operator()(const RandomState& s) const {
      return {SampleWithoutReplacement(s.item_count, l, rng)};
    }
  };
  return std::visit(Visitor{select_count, rng}, policy);
}

void Update(PolicyState& policy, const Selection& selection,
            const Response& response) {
  if (selection.size() != response.size()) {
    throw std::invalid_argument("Update: selection and response lengths differ");
  }
  const std::size_t item_count = ItemCount(policy);
  for (std::size_t item : selection.items) {
    if (item >= item_count) throw std::out_of_range("Update: item index");
  }
  if (auto* ts = std::get_if<ThompsonState>(&policy)) {
    for (std::size_t k = 0; k < selection.size(); ++k) {
      const int c = response.clicks[k];
      ts->alpha[selection.items[k]] += c;
      ts->beta[selection.items[k]] += 1 - c;
    }
  } else if (auto* greedy = std::get_if<GreedyState>(&policy)) {
    for (std::size_t k = 0; k < selection.size(); ++k) {
      greedy->pulls[selection.items[k]] += 1;
      greedy->rewards[selection.items[k]] += response.clicks[k];
    }
  }
}

void ObserveInterests(PolicyState& policy, std::span<const double> interests) {
  auto* optimal = std::get_if<OptimalState>(&policy);
  if (optimal == nullptr) {
    throw std::logic_error("ObserveInterests: policy is not optimal");
  }
  if (interests.size() != optimal->interest_view.size()) {
    throw std::invalid_argument("ObserveInterests: wrong item count");
  }
  optimal->interest_view.assign(interests.begin(), interests.end());
}

}  // namespace loopsim
