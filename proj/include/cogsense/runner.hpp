#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "cogsense/exclusion.hpp"
#include "cogsense/sensing.hpp"

// Scenario execution and artifact emission. A run writes, per scenario:
//   thresholds.csv   instant,method,threshold,iterations
//   flag_counts.csv  method,flagged_count,occurrences
//   table1.csv       n_malicious,method,correct_setmatch,correct_countmatch,n_instants
//   roc.csv          method,threshold,pd,pfa   (includes the wm baseline)
//   manifest.json    digests of everything above
// Output bytes are a pure function of (config, seed) regardless of threads.

namespace cogsense {

struct ArtifactEntry {
  std::string path;    // relative to the run's output directory
  std::string digest;  // fnv1a64 of the file bytes
};

struct RunManifest {
  std::string config_digest;
  std::uint64_t master_seed = 0;
  std::vector<ArtifactEntry> artifacts;
  std::string tool_version;
};

struct RunOptions {
  int threads = 1;
};

RunManifest run_scenario(const ScenarioConfig& config,
                         std::span<const ThresholdMethod> methods,
                         const std::filesystem::path& out_dir,
                         const RunOptions& options = {});

// One run_scenario per malicious count (sub-seed derived from the count),
// plus an aggregated table1.csv spanning all counts at the top level.
RunManifest sweep(const ScenarioConfig& base,
                  std::span<const int> malicious_counts,
                  std::span<const ThresholdMethod> methods,
                  const std::filesystem::path& out_dir,
                  const RunOptions& options = {});

}  // namespace cogsense
