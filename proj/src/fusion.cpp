#include "cogsense/fusion.hpp"

#include <algorithm>

#include "cogsense/errors.hpp"

namespace cogsense {

std::string_view scheme_name(FusionScheme scheme) {
  return scheme ? method_name(*scheme) : std::string_view{"wm"};
}

double fuse_average(const ObservationInstant& instant,
                    std::span<const int> excluded) {
  const int n = static_cast<int>(instant.reports.size());
  if (n == 0) {
    throw InvalidInput("fuse_average: instant has no reports");
  }
  for (int id : excluded) {
    if (id < 0 || id >= n) {
      throw InvalidInput("fuse_average: excluded id does not fit the instant");
    }
  }
  double sum = 0.0;
  int kept = 0;
  for (const SensingReport& r : instant.reports) {
    if (std::binary_search(excluded.begin(), excluded.end(), r.su_id)) {
      continue;
    }
    sum += r.reported_level;
    ++kept;
  }
  if (kept == 0) {
    throw InvalidInput("fuse_average: every user excluded");
  }
  return sum / static_cast<double>(kept);
}

FusionOutcome fuse_and_decide(const ObservationInstant& instant,
                              std::span<const int> excluded,
                              double global_threshold) {
  FusionOutcome outcome;
  outcome.fused_level = fuse_average(instant, excluded);
  outcome.global_threshold = global_threshold;
  outcome.decided_present = outcome.fused_level >= global_threshold;
  return outcome;
}

std::vector<double> scheme_fused_levels(
    std::span<const ObservationInstant> instants, FusionScheme scheme,
    const ExclusionParams& params) {
  std::vector<double> fused;
  fused.reserve(instants.size());
  for (const ObservationInstant& instant : instants) {
    if (scheme) {
      const ThresholdResult result =
          iterative_threshold(instant.reported_levels(), *scheme, params);
      const std::vector<int> flags = classify_reports(instant, result);
      fused.push_back(fuse_average(instant, flags));
    } else {
      fused.push_back(fuse_average(instant, {}));
    }
  }
  return fused;
}

namespace {

struct SplitRates {
  double pd = 0.0;
  std::optional<double> pfa;
};

SplitRates rates_at(std::span<const ObservationInstant> instants,
                    std::span<const double> fused, double threshold) {
  std::size_t present = 0;
  std::size_t present_hits = 0;
  std::size_t absent = 0;
  std::size_t absent_hits = 0;
  for (std::size_t i = 0; i < instants.size(); ++i) {
    if (instants[i].pu_present) {
      ++present;
      if (fused[i] >= threshold) {
        ++present_hits;
      }
    } else {
      ++absent;
      if (fused[i] >= threshold) {
        ++absent_hits;
      }
    }
  }
  if (present == 0) {
    throw InvalidInput("detection_probability: no PU-present instants");
  }
  SplitRates rates;
  rates.pd = static_cast<double>(present_hits) / static_cast<double>(present);
  if (absent > 0) {
    rates.pfa = static_cast<double>(absent_hits) / static_cast<double>(absent);
  }
  return rates;
}

}  // namespace

double detection_probability(std::span<const ObservationInstant> instants,
                             FusionScheme scheme, double global_threshold,
                             const ExclusionParams& params) {
  const std::vector<double> fused = scheme_fused_levels(instants, scheme, params);
  return rates_at(instants, fused, global_threshold).pd;
}

std::vector<RocPoint> roc_sweep(std::span<const ObservationInstant> instants,
                                FusionScheme scheme,
                                std::span<const double> grid,
                                const ExclusionParams& params) {
  if (grid.empty()) {
    throw InvalidInput("roc_sweep: threshold grid is empty");
  }
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) {
      throw InvalidInput("roc_sweep: threshold grid must be strictly ascending");
    }
  }
  const std::vector<double> fused = scheme_fused_levels(instants, scheme, params);
  std::vector<RocPoint> curve;
  curve.reserve(grid.size());
  for (double threshold : grid) {
    const SplitRates rates = rates_at(instants, fused, threshold);
    curve.push_back({threshold, rates.pd, rates.pfa});
  }
  return curve;
}

DetectionCounts correct_detection_count(
    std::span<const ObservationInstant> instants, ThresholdMethod method,
    const ExclusionParams& params) {
  if (instants.empty()) {
    throw InvalidInput("correct_detection_count: no instants");
  }
  DetectionCounts counts;
  for (const ObservationInstant& instant : instants) {
    const ThresholdResult result =
        iterative_threshold(instant.reported_levels(), method, params);
    const std::vector<int> flags = classify_reports(instant, result);
    const std::vector<int> truth = instant.malicious_ids();
    counts.flag_count_hist[flags.size()] += 1;
    if (flags.size() == truth.size()) {
      counts.correct_countmatch += 1;
      if (flags == truth) {
        counts.correct_setmatch += 1;
      }
    }
  }
  return counts;
}

DetectionMetrics evaluate_scheme(std::span<const ObservationInstant> instants,
                                 FusionScheme scheme,
                                 std::span<const double> grid,
                                 const ExclusionParams& params) {
  DetectionMetrics metrics;
  metrics.scheme = scheme;
  if (scheme) {
    metrics.counts = correct_detection_count(instants, *scheme, params);
  } else {
    metrics.counts.flag_count_hist[0] = instants.size();
    for (const ObservationInstant& instant : instants) {
      if (instant.malicious_ids().empty()) {
        metrics.counts.correct_setmatch += 1;
        metrics.counts.correct_countmatch += 1;
      }
    }
  }
  metrics.pd_curve = roc_sweep(instants, scheme, grid, params);
  return metrics;
}

}  // namespace cogsense
