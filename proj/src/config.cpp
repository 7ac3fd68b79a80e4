#include "loopsim/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

namespace loopsim {

using nlohmann::json;

namespace {

class Reader {
 public:
  Reader(const json& doc, std::set<std::string> allowed) : doc_(doc) {
    if (!doc.is_object()) throw ConfigError("file", "expected a JSON object");
    for (const auto& [key, value] : doc.items()) {
      if (!allowed.contains(key)) throw ConfigError(key, "unknown key");
    }
  }

  bool Has(const std::string& key) const { return doc_.contains(key); }

  const json& Required(const std::string& key) const {
    if (!Has(key)) throw ConfigError(key, "missing required key");
    return doc_.at(key);
  }

  std::uint64_t Unsigned(const std::string& key) const {
    return AsUnsigned(key, Required(key));
  }
  std::uint64_t Unsigned(const std::string& key, std::uint64_t fallback) const {
    return Has(key) ? Unsigned(key) : fallback;
  }

  double Real(const std::string& key, double fallback) const {
    return Has(key) ? AsReal(key, doc_.at(key)) : fallback;
  }

  std::string String(const std::string& key) const {
    const json& value = Required(key);
    if (!value.is_string()) throw ConfigError(key, "expected a string");
    return value.get<std::string>();
  }
  std::string String(const std::string& key, std::string fallback) const {
    return Has(key) ? String(key) : fallback;
  }

  std::vector<std::uint64_t> UnsignedList(const std::string& key) const {
    std::vector<std::uint64_t> out;
    for (const json& v : List(key)) out.push_back(AsUnsigned(key, v));
    return out;
  }

  std::vector<double> RealList(const std::string& key) const {
    std::vector<double> out;
    for (const json& v : List(key)) out.push_back(AsReal(key, v));
    return out;
  }

  std::vector<std::string> StringList(const std::string& key) const {
    std::vector<std::string> out;
    for (const json& v : List(key)) {
      if (!v.is_string()) throw ConfigError(key, "expected a list of strings");
      out.push_back(v.get<std::string>());
    }
    return out;
  }

 private:
  const json& List(const std::string& key) const {
    const json& value = Required(key);
    if (!value.is_array()) throw ConfigError(key, "expected a list");
    return value;
  }

  static std::uint64_t AsUnsigned(const std::string& key, const json& v) {
    if (!v.is_number_unsigned()) {
      throw ConfigError(key, "expected a nonnegative integer");
    }
    return v.get<std::uint64_t>();
  }

  static double AsReal(const std::string& key, const json& v) {
    if (!v.is_number()) throw ConfigError(key, "expected a number");
    return v.get<double>();
  }

  const json& doc_;
};

template <typename T>
std::vector<std::size_t> ToSizes(const std::vector<T>& values) {
  return {values.begin(), values.end()};
}

}  // namespace

std::vector<double> LogSpaced(double log10_start, double log10_stop,
                              std::size_t count) {
  std::vector<double> out;
  if (count == 0) return out;
  if (count == 1) return {std::pow(10.0, log10_start)};
  const double step = (log10_stop - log10_start) / static_cast<double>(count - 1);
  for (std::size_t k = 0; k < count; ++k) {
    out.push_back(std::pow(10.0, log10_start + step * static_cast<double>(k)));
  }
  return out;
}

std::vector<double> DefaultRestartProbabilities() { return LogSpaced(-3, 0, 7); }

std::vector<double> DefaultRestartScales() { return {0.0, 0.25, 0.5, 0.75, 0.9}; }

TrialConfig TrialConfigFromJson(const json& doc) {
  const Reader in(doc, {"item_count", "select_count", "horizon", "policy",
                        "epsilon", "model", "noise_width", "restart_probability",
                        "restart_scale", "seed", "trial_index",
                        "snapshot_every"});
  TrialConfig config;
  config.cell.item_count = in.Unsigned("item_count");
  config.cell.select_count = in.Unsigned("select_count");
  config.horizon = in.Unsigned("horizon");
  config.cell.policy.kind = ParsePolicyKind(in.String("policy"));
  if (config.cell.policy.kind == PolicyKind::kGreedy) {
    config.cell.policy.epsilon = in.Real("epsilon", kDefaultEpsilon);
  } else {
    config.cell.policy.epsilon = 0.0;
  }
  InterestModelSpec& model = config.cell.model;
  model.kind = ParseModelKind(in.String("model", "basic"));
  if (model.kind == ModelKind::kAdditiveNoise) {
    model.noise_width = in.Real("noise_width", 0.0);
  } else if (model.kind == ModelKind::kRestarts) {
    model.restart_probability = in.Real("restart_probability", 0.0);
    model.restart_scale = in.Real("restart_scale", 0.0);
  }
  config.master_seed = in.Unsigned("seed", 0);
  config.trial_index = in.Unsigned("trial_index", 0);
  config.snapshot_every = in.Unsigned("snapshot_every", 50);
  config.Validate();
  return config;
}

json ToJson(const TrialConfig& config) {
  const CellParams& cell = config.cell;
  json doc = {
      {"item_count", cell.item_count},
      {"select_count", cell.select_count},
      {"horizon", config.horizon},
      {"policy", ToString(cell.policy.kind)},
      {"model", ToString(cell.model.kind)},
      {"seed", config.master_seed},
      {"trial_index", config.trial_index},
      {"snapshot_every", config.snapshot_every},
  };
  if (cell.policy.kind == PolicyKind::kGreedy) doc["epsilon"] = cell.policy.epsilon;
  if (cell.model.kind == ModelKind::kAdditiveNoise) {
    doc["noise_width"] = cell.model.noise_width;
  } else if (cell.model.kind == ModelKind::kRestarts) {
    doc["restart_probability"] = cell.model.restart_probability;
    doc["restart_scale"] = cell.model.restart_scale;
  }
  return doc;
}

GridSpec GridSpecFromJson(const json& doc) {
  const Reader in(doc, {"item_counts", "select_counts", "policies", "epsilons",
                        "model", "noise_widths", "restart_probabilities",
                        "restart_scales", "trials", "horizon", "seed",
                        "checkpoints"});
  GridSpec grid;
  grid.item_counts = ToSizes(in.UnsignedList("item_counts"));
  grid.select_counts = ToSizes(in.UnsignedList("select_counts"));
  grid.policies.clear();
  for (const std::string& name : in.StringList("policies")) {
    grid.policies.push_back(ParsePolicyKind(name));
  }
  grid.epsilons =
      in.Has("epsilons") ? in.RealList("epsilons") : std::vector{kDefaultEpsilon};
  grid.model = ParseModelKind(in.String("model", "basic"));
  grid.noise_widths =
      in.Has("noise_widths") ? in.RealList("noise_widths") : std::vector{0.0};

  if (in.Has("restart_probabilities") &&
      in.Required("restart_probabilities").is_object()) {
    const Reader range(in.Required("restart_probabilities"),
                       {"log10_start", "log10_stop", "count"});
    grid.restart_probabilities =
        LogSpaced(range.Real("log10_start", -3.0), range.Real("log10_stop", 0.0),
                  range.Unsigned("count", 7));
  } else if (in.Has("restart_probabilities")) {
    grid.restart_probabilities = in.RealList("restart_probabilities");
  } else {
    grid.restart_probabilities = DefaultRestartProbabilities();
  }
  grid.restart_scales = in.Has("restart_scales") ? in.RealList("restart_scales")
                                                 : DefaultRestartScales();
  // Sweeps that do not belong to the chosen model are normalized away so
  // that equal grids compare equal.
  if (grid.model != ModelKind::kAdditiveNoise) grid.noise_widths = {0.0};
  if (grid.model != ModelKind::kRestarts) {
    grid.restart_probabilities = {0.0};
    grid.restart_scales = {0.0};
  }

  grid.trials = in.Unsigned("trials", 30);
  grid.horizon = in.Unsigned("horizon", 2000);
  grid.seed = in.Unsigned("seed", 0);
  grid.checkpoints =
      in.Has("checkpoints") ? ToSizes(in.UnsignedList("checkpoints"))
                            : std::vector<std::size_t>{};
  grid.Validate();
  return grid;
}

json ToJson(const GridSpec& grid) {
  json policies = json::array();
  for (PolicyKind kind : grid.policies) policies.push_back(ToString(kind));
  json doc = {
      {"item_counts", grid.item_counts},
      {"select_counts", grid.select_counts},
      {"policies", policies},
      {"epsilons", grid.epsilons},
      {"model", ToString(grid.model)},
      {"trials", grid.trials},
      {"horizon", grid.horizon},
      {"seed", grid.seed},
      {"checkpoints", grid.checkpoints},
  };
  if (grid.model == ModelKind::kAdditiveNoise) {
    doc["noise_widths"] = grid.noise_widths;
  } else if (grid.model == ModelKind::kRestarts) {
    doc["restart_probabilities"] = grid.restart_probabilities;
    doc["restart_scales"] = grid.restart_scales;
  }
  return doc;
}

json ReadJsonFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("file", "cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    throw ConfigError("file", std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace loopsim
