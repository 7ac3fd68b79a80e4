#include "loopsim/output.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "loopsim/format.hpp"

namespace loopsim {

namespace {

template <typename T>
std::string Join(const std::vector<T>& values) {
  std::string out;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k) out += ';';
    out += std::to_string(values[k]);
  }
  return out;
}

constexpr const char* kCellColumns = "M,l,policy,epsilon,model,w,q,s";

std::string CellColumns(const CellParams& cell) {
  std::string out = std::to_string(cell.item_count) + ',' +
                    std::to_string(cell.select_count) + ',' +
                    std::string(ToString(cell.policy.kind)) + ',';
  if (cell.policy.kind == PolicyKind::kGreedy) out += FormatDouble(cell.policy.epsilon);
  out += ',' + std::string(ToString(cell.model.kind)) + ',';
  if (cell.model.kind == ModelKind::kAdditiveNoise) {
    out += FormatDouble(cell.model.noise_width);
  }
  out += ',';
  if (cell.model.kind == ModelKind::kRestarts) {
    out += FormatDouble(cell.model.restart_probability) + ',' +
           FormatDouble(cell.model.restart_scale);
  } else {
    out += ',';
  }
  return out;
}

}  // namespace

std::string TraceCsv(const TrialTrace& trace) {
  std::string out =
      "t,selection,clicks,delta,loop_amplitude,max_interest,cumulative_reward\n";
  for (std::size_t t = 1; t <= trace.steps.size(); ++t) {
    const StepRecord& rec = trace.steps[t - 1];
    out += std::to_string(t) + ',' + Join(rec.selection.items) + ',' +
           Join(rec.response.clicks) + ',' + FormatDouble(rec.delta) + ',' +
           FormatDouble(rec.metrics.loop_amplitude) + ',' +
           FormatDouble(rec.metrics.max_interest) + ',' +
           std::to_string(rec.metrics.cumulative_reward) + '\n';
  }
  return out;
}

std::string SnapshotsCsv(const TrialTrace& trace) {
  std::string out = "t,item,mean_interest,alpha,beta,pulls,rewards\n";
  for (const StateSnapshot& snap : trace.snapshots) {
    const auto* ts = std::get_if<ThompsonState>(&snap.policy);
    const auto* greedy = std::get_if<GreedyState>(&snap.policy);
    for (std::size_t i = 0; i < snap.mean_interests.size(); ++i) {
      out += std::to_string(snap.step) + ',' + std::to_string(i) + ',' +
             FormatDouble(snap.mean_interests[i]) + ',';
      if (ts) out += FormatDouble(ts->alpha[i]) + ',' + FormatDouble(ts->beta[i]);
      else out += ',';
      out += ',';
      if (greedy) {
        out += std::to_string(greedy->pulls[i]) + ',' +
               std::to_string(greedy->rewards[i]);
      } else {
        out += ',';
      }
      out += '\n';
    }
  }
  return out;
}

std::string ResultsCsv(const GridResult& result) {
  std::string out = std::string(kCellColumns) +
                    ",metric,step,mean,half_width,trials,restart_bound,"
                    "growth_ceiling\n";
  for (const CellResult& cell : result.cells) {
    const std::string prefix = CellColumns(cell.cell);
    std::string bound;
    if (cell.cell.model.kind == ModelKind::kRestarts) {
      bound = FormatDouble(RestartBound(cell.cell.model.restart_probability,
                                        cell.cell.model.restart_scale));
    }
    for (const MetricRow& row : cell.rows) {
      out += prefix + ',' + row.metric + ',' + std::to_string(row.step) + ',' +
             FormatDouble(row.stats.mean) + ',' +
             FormatDouble(row.stats.half_width) + ',' +
             std::to_string(row.trials) + ',' + bound + ',' +
             FormatDouble(GrowthCeiling(row.step, kMeanDelta, 1.0)) + '\n';
    }
  }
  return out;
}

std::string TrialsCsv(const GridResult& result) {
  std::string out = std::string(kCellColumns) +
                    ",trial,seed,step,loop_amplitude,max_interest,"
                    "cumulative_reward,regret\n";
  for (const CellResult& cell : result.cells) {
    const std::string prefix = CellColumns(cell.cell);
    for (const TrialSummary& trial : cell.trials) {
      for (const MetricSnapshot& m : trial.at_steps) {
        out += prefix + ',' + std::to_string(trial.trial_index) + ',' +
               std::to_string(trial.seed) + ',' + std::to_string(m.step) + ',' +
               FormatDouble(m.loop_amplitude) + ',' +
               FormatDouble(m.max_interest) + ',' +
               std::to_string(m.cumulative_reward) + ',' +
               FormatDouble(m.regret) + '\n';
      }
    }
  }
  return out;
}

std::string FailuresCsv(const GridResult& result) {
  std::string out = std::string(kCellColumns) + ",error\n";
  for (const CellFailure& failure : result.failures) {
    std::string message = failure.message;
    for (char& c : message) {
      if (c == ',' || c == '\n') c = ' ';
    }
    out += CellColumns(failure.cell) + ',' + message + '\n';
  }
  return out;
}

void WriteTextFile(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

nlohmann::json RunManifest::ToJson() const {
  return {
      {"artifact", kArtifactName}, {"version", kArtifactVersion},
      {"command", command},        {"config", config},
      {"started", started},        {"finished", finished},
      {"files", files},            {"failures", failures},
  };
}

std::string UtcTimestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buf;
}

}  // namespace loopsim
