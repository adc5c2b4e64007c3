#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "cogsense/sensing.hpp"

// Turns a scale/skewness estimate into a lower exclusion threshold and runs
// the iterative refinement loop: compute a threshold over the retained
// values, drop everything strictly below it, repeat until nothing new is
// dropped, consecutive thresholds agree within tolerance, or the iteration
// budget runs out.

namespace cogsense {

enum class ThresholdMethod { kMeanDifference, kMad, kSn, kQn, kMedcouple };

inline constexpr ThresholdMethod kAllMethods[] = {
    ThresholdMethod::kMedcouple, ThresholdMethod::kMeanDifference,
    ThresholdMethod::kMad, ThresholdMethod::kSn, ThresholdMethod::kQn};

std::string_view method_name(ThresholdMethod method);
std::optional<ThresholdMethod> method_from_name(std::string_view name);

// Smallest retained-sample size the method's estimator accepts.
std::size_t method_min_sample(ThresholdMethod method);

struct ExclusionParams {
  double k = 3.0;          // threshold multiplier, unused by the medcouple
  int max_iterations = 10;
  double tolerance = 1e-6;
  // Off by default: only the lower threshold drives classification, matching
  // an always-no attacker population. When on, values above the upper
  // threshold (upper fence for the medcouple, location + k*sigma otherwise)
  // are excluded as well.
  bool two_sided = false;
};

struct ThresholdBand {
  double lower;
  double upper;
};

// Lower exclusion threshold over one sample:
//   medcouple        -> adjusted lower fence q1 - h_l*iqr (k unused)
//   mad / sn / qn    -> median - k * sigma_hat
//   mean difference  -> mean - k * sigma_hat
// where sigma_hat is the Gaussian-consistent scale for the method.
double lower_threshold(std::span<const double> sample, ThresholdMethod method,
                       double k);

// Lower and upper thresholds with the same construction.
ThresholdBand threshold_band(std::span<const double> sample,
                             ThresholdMethod method, double k);

struct ThresholdResult {
  ThresholdMethod method = ThresholdMethod::kMad;
  double lower_threshold = 0.0;
  std::optional<double> upper_threshold;  // engaged in two-sided mode
  std::vector<double> trace;              // one lower threshold per iteration
  std::vector<int> excluded_ids;          // ascending sample positions
  // Set when a round could not be applied because it would have shrunk the
  // retained set below the estimator's minimum (or left the medcouple
  // degenerate); the result then reflects the last valid round.
  bool truncated = false;

  std::size_t iterations_used() const { return trace.size(); }
};

ThresholdResult iterative_threshold(std::span<const double> sample,
                                    ThresholdMethod method,
                                    const ExclusionParams& params);

// Projects the excluded positions of a result onto an instant's SU ids.
// The result must have been computed over this instant's reported levels;
// ids outside the instant raise InvalidInput.
std::vector<int> classify_reports(const ObservationInstant& instant,
                                  const ThresholdResult& result);

}  // namespace cogsense
