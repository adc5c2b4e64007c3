#include "cogsense/exclusion.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cogsense/errors.hpp"
#include "cogsense/robust.hpp"

namespace cogsense {

std::string_view method_name(ThresholdMethod method) {
  switch (method) {
    case ThresholdMethod::kMeanDifference:
      return "md";
    case ThresholdMethod::kMad:
      return "mad";
    case ThresholdMethod::kSn:
      return "sn";
    case ThresholdMethod::kQn:
      return "qn";
    case ThresholdMethod::kMedcouple:
      return "mc";
  }
  return "?";
}

std::optional<ThresholdMethod> method_from_name(std::string_view name) {
  if (name == "md") return ThresholdMethod::kMeanDifference;
  if (name == "mad") return ThresholdMethod::kMad;
  if (name == "sn") return ThresholdMethod::kSn;
  if (name == "qn") return ThresholdMethod::kQn;
  if (name == "mc") return ThresholdMethod::kMedcouple;
  return std::nullopt;
}

std::size_t method_min_sample(ThresholdMethod method) {
  switch (method) {
    case ThresholdMethod::kMeanDifference:
    case ThresholdMethod::kMad:
      return 1;
    case ThresholdMethod::kSn:
    case ThresholdMethod::kQn:
      return 2;
    case ThresholdMethod::kMedcouple:
      return 3;
  }
  return 1;
}

namespace {

double sample_mean(std::span<const double> sample) {
  return std::accumulate(sample.begin(), sample.end(), 0.0) /
         static_cast<double>(sample.size());
}

}  // namespace

ThresholdBand threshold_band(std::span<const double> sample,
                             ThresholdMethod method, double k) {
  if (!(k > 0.0)) {
    throw InvalidInput("threshold_band: k must be positive");
  }
  switch (method) {
    case ThresholdMethod::kMedcouple: {
      const MedcoupleFences fences = adjusted_fences(sample);
      return {fences.lower_fence, fences.upper_fence};
    }
    case ThresholdMethod::kMeanDifference: {
      const double sigma = kMeanDiffToSigma * mean_difference(sample);
      const double loc = sample_mean(sample);
      return {loc - k * sigma, loc + k * sigma};
    }
    case ThresholdMethod::kMad: {
      const double sigma = kMadToSigma * mad(sample);
      const double loc = median(sample);
      return {loc - k * sigma, loc + k * sigma};
    }
    case ThresholdMethod::kSn: {
      const double sigma = sn_estimator(sample);
      const double loc = median(sample);
      return {loc - k * sigma, loc + k * sigma};
    }
    case ThresholdMethod::kQn: {
      const double sigma = qn_estimator(sample);
      const double loc = median(sample);
      return {loc - k * sigma, loc + k * sigma};
    }
  }
  throw InternalError("threshold_band: unhandled method");
}

double lower_threshold(std::span<const double> sample, ThresholdMethod method,
                       double k) {
  return threshold_band(sample, method, k).lower;
}

ThresholdResult iterative_threshold(std::span<const double> sample,
                                    ThresholdMethod method,
                                    const ExclusionParams& params) {
  if (!(params.k > 0.0)) {
    throw InvalidInput("iterative_threshold: k must be positive");
  }
  if (params.max_iterations < 1) {
    throw InvalidInput("iterative_threshold: max_iterations must be positive");
  }
  if (!(params.tolerance > 0.0)) {
    throw InvalidInput("iterative_threshold: tolerance must be positive");
  }

  ThresholdResult result;
  result.method = method;

  std::vector<int> retained(sample.size());
  std::iota(retained.begin(), retained.end(), 0);

  ThresholdBand band{0.0, 0.0};
  for (int iter = 1; iter <= params.max_iterations; ++iter) {
    std::vector<double> values;
    values.reserve(retained.size());
    for (int id : retained) {
      values.push_back(sample[static_cast<std::size_t>(id)]);
    }

    ThresholdBand next{0.0, 0.0};
    try {
      next = threshold_band(values, method, params.k);
    } catch (const DegenerateSample&) {
      // Exclusions turned the retained set degenerate; keep the last valid
      // round. On the first round there is nothing valid yet, so propagate.
      if (iter == 1) {
        throw;
      }
      result.truncated = true;
      break;
    }

    std::vector<int> still_retained;
    std::vector<int> newly_excluded;
    for (int id : retained) {
      const double v = sample[static_cast<std::size_t>(id)];
      const bool out =
          v < next.lower || (params.two_sided && v > next.upper);
      (out ? newly_excluded : still_retained).push_back(id);
    }

    if (still_retained.size() < method_min_sample(method)) {
      // Applying this round would leave too few values to re-estimate.
      result.truncated = true;
      if (result.trace.empty()) {
        // Keep the round's threshold so the result still reports one
        // iteration, but do not apply its exclusions.
        band = next;
        result.trace.push_back(next.lower);
      }
      break;
    }

    band = next;
    result.trace.push_back(next.lower);
    result.excluded_ids.insert(result.excluded_ids.end(),
                               newly_excluded.begin(), newly_excluded.end());
    retained = std::move(still_retained);

    if (newly_excluded.empty()) {
      break;
    }
    const std::size_t t = result.trace.size();
    if (t >= 2 &&
        std::fabs(result.trace[t - 1] - result.trace[t - 2]) <
            params.tolerance) {
      break;
    }
  }

  result.lower_threshold = band.lower;
  if (params.two_sided) {
    result.upper_threshold = band.upper;
  }
  std::sort(result.excluded_ids.begin(), result.excluded_ids.end());
  return result;
}

std::vector<int> classify_reports(const ObservationInstant& instant,
                                  const ThresholdResult& result) {
  const int n = static_cast<int>(instant.reports.size());
  for (int id : result.excluded_ids) {
    if (id < 0 || id >= n) {
      throw InvalidInput(
          "classify_reports: excluded id does not fit the instant");
    }
  }
  return result.excluded_ids;
}

}  // namespace cogsense
