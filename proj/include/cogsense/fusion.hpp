#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "cogsense/exclusion.hpp"
#include "cogsense/sensing.hpp"

// Fusion-center side: average the retained reports, decide on primary-user
// presence against a global threshold, and score each exclusion scheme by
// correct-detection counts and Pd/Pfa sweeps. A scheme is either one of the
// five threshold methods or the with-malicious baseline (no exclusion),
// written "wm".

namespace cogsense {

// nullopt selects the with-malicious baseline.
using FusionScheme = std::optional<ThresholdMethod>;

std::string_view scheme_name(FusionScheme scheme);

struct FusionOutcome {
  double fused_level = 0.0;
  bool decided_present = false;
  double global_threshold = 0.0;
};

// Arithmetic mean of reported levels over SU ids not in `excluded`
// (ascending). Excluding every user raises InvalidInput.
double fuse_average(const ObservationInstant& instant,
                    std::span<const int> excluded);

FusionOutcome fuse_and_decide(const ObservationInstant& instant,
                              std::span<const int> excluded,
                              double global_threshold);

// Fused level per instant after the scheme's exclusions (none for wm).
std::vector<double> scheme_fused_levels(
    std::span<const ObservationInstant> instants, FusionScheme scheme,
    const ExclusionParams& params);

// Fraction of PU-present instants whose fused level clears the threshold.
double detection_probability(std::span<const ObservationInstant> instants,
                             FusionScheme scheme, double global_threshold,
                             const ExclusionParams& params);

struct RocPoint {
  double threshold = 0.0;
  double pd = 0.0;
  std::optional<double> pfa;  // absent when the scenario has no PU-absent instants
};

// Pd (and Pfa when computable) across a strictly ascending threshold grid.
std::vector<RocPoint> roc_sweep(std::span<const ObservationInstant> instants,
                                FusionScheme scheme,
                                std::span<const double> grid,
                                const ExclusionParams& params);

struct DetectionCounts {
  // Instants whose flagged set equals the true malicious set exactly.
  std::size_t correct_setmatch = 0;
  // Instants where just the flagged-count matches the true count.
  std::size_t correct_countmatch = 0;
  std::map<std::size_t, std::size_t> flag_count_hist;  // flagged -> occurrences
};

DetectionCounts correct_detection_count(
    std::span<const ObservationInstant> instants, ThresholdMethod method,
    const ExclusionParams& params);

// Everything the harness serializes for one scheme.
struct DetectionMetrics {
  FusionScheme scheme;
  DetectionCounts counts;
  std::vector<RocPoint> pd_curve;
};

DetectionMetrics evaluate_scheme(std::span<const ObservationInstant> instants,
                                 FusionScheme scheme,
                                 std::span<const double> grid,
                                 const ExclusionParams& params);

}  // namespace cogsense
