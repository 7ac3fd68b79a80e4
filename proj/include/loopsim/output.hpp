#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "loopsim/engine.hpp"

namespace loopsim {

inline constexpr const char* kArtifactName = "loopsim";
inline constexpr const char* kArtifactVersion = "0.1.0";

// CSV layouts. Numbers use the shortest round-trip decimal form; fields that
// do not apply to a row are left empty.
//
// trace:     t,selection,clicks,delta,loop_amplitude,max_interest,cumulative_reward
// snapshots: t,item,mean_interest,alpha,beta,pulls,rewards
// results:   M,l,policy,epsilon,model,w,q,s,metric,step,mean,half_width,trials,
//            restart_bound,growth_ceiling
// trials:    M,l,policy,epsilon,model,w,q,s,trial,seed,step,loop_amplitude,
//            max_interest,cumulative_reward,regret
// failures:  M,l,policy,epsilon,model,w,q,s,error

std::string TraceCsv(const TrialTrace& trace);
std::string SnapshotsCsv(const TrialTrace& trace);
std::string ResultsCsv(const GridResult& result);
std::string TrialsCsv(const GridResult& result);
std::string FailuresCsv(const GridResult& result);

/// Writes `content` to `path`, throwing std::runtime_error on failure.
void WriteTextFile(const std::filesystem::path& path, const std::string& content);

/// Record of one CLI run; written as manifest.json next to the outputs.
struct RunManifest {
  std::string command;
  nlohmann::json config;
  std::string started;
  std::string finished;
  std::vector<std::string> files;  // relative to the output directory
  std::vector<std::string> failures;

  nlohmann::json ToJson() const;
};

/// Current UTC time as an ISO 8601 string.
std::string UtcTimestamp();

}  // namespace loopsim
