#include "cogsense/runner.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>

#include <json.hpp>

#include "cogsense/config_io.hpp"
#include "cogsense/csv.hpp"
#include "cogsense/errors.hpp"
#include "cogsense/fusion.hpp"
#include "cogsense/version.hpp"

namespace cogsense {

namespace {

using ordered_json = nlohmann::ordered_json;

void verify_instants(const ScenarioConfig& config,
                     const std::vector<ObservationInstant>& instants) {
  if (instants.size() != static_cast<std::size_t>(config.n_instants)) {
    throw InternalError("scenario produced the wrong number of instants");
  }
  for (const ObservationInstant& instant : instants) {
    if (instant.reports.size() != static_cast<std::size_t>(config.n_su)) {
      throw InternalError("instant holds the wrong number of reports");
    }
    int malicious = 0;
    for (const SensingReport& r : instant.reports) {
      if (!std::isfinite(r.reported_level) || r.reported_level < 0.0 ||
          !std::isfinite(r.honest_level) || r.honest_level < 0.0) {
        throw InternalError("instant holds a negative or non-finite level");
      }
      const bool should_be_malicious = r.su_id < config.n_malicious;
      if (r.is_malicious != should_be_malicious) {
        throw InternalError("malicious labels drifted across instants");
      }
      if (!r.is_malicious && r.reported_level != r.honest_level) {
        throw InternalError("honest report was altered");
      }
      if (r.is_malicious) {
        ++malicious;
      }
    }
    if (malicious != config.n_malicious) {
      throw InternalError("instant holds the wrong number of malicious users");
    }
  }
}

void ensure_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw IoError("cannot create output directory " + dir.string() + ": " +
                  ec.message());
  }
}

void emit(const std::filesystem::path& out_dir, const std::string& name,
          const std::string& content, RunManifest& manifest) {
  write_file(out_dir / name, content);
  manifest.artifacts.push_back({name, fnv1a64_hex(content)});
}

std::string manifest_json(const RunManifest& manifest) {
  ordered_json j;
  j["tool_version"] = manifest.tool_version;
  j["master_seed"] = manifest.master_seed;
  j["config_digest"] = manifest.config_digest;
  ordered_json artifacts = ordered_json::array();
  for (const ArtifactEntry& a : manifest.artifacts) {
    artifacts.push_back({{"path", a.path}, {"digest", a.digest}});
  }
  j["artifacts"] = artifacts;
  return j.dump(2) + "\n";
}

// Data rows of a CSV file (everything after the header line).
std::string csv_data_rows(const std::string& content) {
  const auto pos = content.find('\n');
  return pos == std::string::npos ? std::string{} : content.substr(pos + 1);
}

}  // namespace

RunManifest run_scenario(const ScenarioConfig& config,
                         std::span<const ThresholdMethod> methods,
                         const std::filesystem::path& out_dir,
                         const RunOptions& options) {
  config.validate();
  if (methods.empty()) {
    throw InvalidInput("run_scenario: no methods selected");
  }
  ensure_directory(out_dir);

  const std::vector<ObservationInstant> instants =
      simulate_scenario(config, options.threads);
  verify_instants(config, instants);

  const ExclusionParams params{config.method_multiplier_k,
                               config.max_iterations,
                               config.threshold_tolerance,
                               /*two_sided=*/false};
  const std::vector<double> grid = config.grid_points();

  // One threshold result per (instant, method); every CSV derives from these.
  std::vector<std::vector<ThresholdResult>> results(methods.size());
  for (std::size_t m = 0; m < methods.size(); ++m) {
    results[m].reserve(instants.size());
    for (const ObservationInstant& instant : instants) {
      results[m].push_back(
          iterative_threshold(instant.reported_levels(), methods[m], params));
    }
  }

  RunManifest manifest;
  manifest.tool_version = std::string(kToolVersion);
  manifest.master_seed = config.master_seed;
  manifest.config_digest = fnv1a64_hex(canonical_config_json(config));

  {
    CsvBuilder csv;
    csv.row("instant", "method", "threshold", "iterations");
    for (std::size_t i = 0; i < instants.size(); ++i) {
      for (std::size_t m = 0; m < methods.size(); ++m) {
        const ThresholdResult& r = results[m][i];
        csv.row(instants[i].instant_index, method_name(methods[m]),
                r.lower_threshold, r.iterations_used());
      }
    }
    emit(out_dir, "thresholds.csv", csv.str(), manifest);
  }

  {
    CsvBuilder csv;
    csv.row("method", "flagged_count", "occurrences");
    for (std::size_t m = 0; m < methods.size(); ++m) {
      std::map<std::size_t, std::size_t> hist;
      for (std::size_t i = 0; i < instants.size(); ++i) {
        hist[classify_reports(instants[i], results[m][i]).size()] += 1;
      }
      for (const auto& [flagged, occurrences] : hist) {
        csv.row(method_name(methods[m]), flagged, occurrences);
      }
    }
    emit(out_dir, "flag_counts.csv", csv.str(), manifest);
  }

  {
    CsvBuilder csv;
    csv.row("n_malicious", "method", "correct_setmatch", "correct_countmatch",
            "n_instants");
    for (std::size_t m = 0; m < methods.size(); ++m) {
      std::size_t setmatch = 0;
      std::size_t countmatch = 0;
      for (std::size_t i = 0; i < instants.size(); ++i) {
        const std::vector<int> flags =
            classify_reports(instants[i], results[m][i]);
        const std::vector<int> truth = instants[i].malicious_ids();
        if (flags.size() == truth.size()) {
          ++countmatch;
          if (flags == truth) {
            ++setmatch;
          }
        }
      }
      csv.row(config.n_malicious, method_name(methods[m]), setmatch,
              countmatch, instants.size());
    }
    emit(out_dir, "table1.csv", csv.str(), manifest);
  }

  {
    CsvBuilder csv;
    csv.row("method", "threshold", "pd", "pfa");
    std::vector<FusionScheme> schemes(methods.begin(), methods.end());
    schemes.push_back(std::nullopt);  // wm baseline
    for (FusionScheme scheme : schemes) {
      const std::vector<RocPoint> curve =
          roc_sweep(instants, scheme, grid, params);
      for (const RocPoint& point : curve) {
        if (point.pfa) {
          csv.row(scheme_name(scheme), point.threshold, point.pd, *point.pfa);
        } else {
          csv.row(scheme_name(scheme), point.threshold, point.pd, "");
        }
      }
    }
    emit(out_dir, "roc.csv", csv.str(), manifest);
  }

  write_file(out_dir / "manifest.json", manifest_json(manifest));
  return manifest;
}

RunManifest sweep(const ScenarioConfig& base,
                  std::span<const int> malicious_counts,
                  std::span<const ThresholdMethod> methods,
                  const std::filesystem::path& out_dir,
                  const RunOptions& options) {
  base.validate();
  if (malicious_counts.empty()) {
    throw InvalidInput("sweep: empty malicious counts list");
  }
  std::set<int> seen;
  for (int count : malicious_counts) {
    if (count < 0 || count >= base.n_su) {
      throw ConfigError("n_malicious",
                        "sweep count " + std::to_string(count) +
                            " must be non-negative and strictly less than n_su");
    }
    if (!seen.insert(count).second) {
      throw InvalidInput("sweep: duplicate malicious count " +
                         std::to_string(count));
    }
  }
  ensure_directory(out_dir);

  RunManifest manifest;
  manifest.tool_version = std::string(kToolVersion);
  manifest.master_seed = base.master_seed;
  {
    std::string tagged = canonical_config_json(base) + "#sweep=";
    for (int count : malicious_counts) {
      tagged += std::to_string(count) + ",";
    }
    manifest.config_digest = fnv1a64_hex(tagged);
  }

  CsvBuilder table;
  table.row("n_malicious", "method", "correct_setmatch", "correct_countmatch",
            "n_instants");
  std::string table_rows;
  for (int count : malicious_counts) {
    ScenarioConfig sub = base;
    sub.n_malicious = count;
    sub.master_seed = derive_seed(base.master_seed, kSweepDomain,
                                  static_cast<std::uint64_t>(count));
    const std::string sub_dir = "m" + std::to_string(count);
    const RunManifest sub_manifest =
        run_scenario(sub, methods, out_dir / sub_dir, options);
    for (const ArtifactEntry& a : sub_manifest.artifacts) {
      manifest.artifacts.push_back({sub_dir + "/" + a.path, a.digest});
    }
    const std::string sub_manifest_bytes =
        read_file(out_dir / sub_dir / "manifest.json");
    manifest.artifacts.push_back(
        {sub_dir + "/manifest.json", fnv1a64_hex(sub_manifest_bytes)});
    table_rows +=
        csv_data_rows(read_file(out_dir / sub_dir / "table1.csv"));
  }

  const std::string aggregated = table.str() + table_rows;
  write_file(out_dir / "table1.csv", aggregated);
  manifest.artifacts.push_back({"table1.csv", fnv1a64_hex(aggregated)});

  write_file(out_dir / "manifest.json", manifest_json(manifest));
  return manifest;
}

}  // namespace cogsense
