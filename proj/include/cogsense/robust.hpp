#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <vector>

// Robust scale and skewness estimators over one instant's reported energy
// levels. All functions are pure; invalid sizes or non-finite values raise
// InvalidInput, and samples with no pair straddling the median raise
// DegenerateSample from the medcouple.

namespace cogsense {

// Reported energy levels of the secondary users at one observation instant.
using Sample = std::vector<double>;

// Median with the mean-of-the-two-central-values convention for even sizes.
double median(std::span<const double> values);

// Interpolated quantile of an ascending-sorted range: linear interpolation
// between the order statistics at 1-based positions 1 + p*(n-1).
double quantile_sorted(std::span<const double> sorted, double p);

// Gini mean difference: the arithmetic mean of |x_i - x_j| over all ordered
// pairs, zero diagonal included, divided by N^2.
double mean_difference(std::span<const double> sample);

// Median absolute deviation from the sample median (no consistency factor).
double mad(std::span<const double> sample);

// 1.192 * med_i( med_{j != i} |x_i - x_j| ). The inner median runs over the
// n-1 distances from x_i to every other observation.
double sn_estimator(std::span<const double> sample);

// 2.2 * first quartile of the n(n-1)/2 pairwise distances |x_i - x_j|, i < j,
// with the same interpolated quartile convention as quantile_sorted.
double qn_estimator(std::span<const double> sample);

struct QuartilePair {
  double q1;
  double q3;
};

QuartilePair quartiles(std::span<const double> sample);

// Medcouple: median of ((x_j - m) - (m - x_i)) / (x_j - x_i) over all pairs
// with x_i < m < x_j, where m is the sample median. Always in [-1, +1].
double medcouple(std::span<const double> sample);

struct FenceFactors {
  double h_l;
  double h_r;
};

// Exponential fence factors h_l = 1.5*exp(-3.5*mc), h_r = 1.5*exp(4*mc).
FenceFactors fence_factors(double mc);

struct MedcoupleFences {
  double mc;
  double q1;
  double q3;
  double iqr;
  double h_l;
  double h_r;
  double lower_fence;  // q1 - h_l * iqr
  double upper_fence;  // q3 + h_r * iqr
};

MedcoupleFences adjusted_fences(std::span<const double> sample);

// Factors that turn the raw estimates into a Gaussian-consistent sigma.
// Sn and Qn already carry their constants inside the estimator.
inline constexpr double kMadToSigma = 1.4826;
inline const double kMeanDiffToSigma = std::sqrt(std::numbers::pi) / 2.0;

}  // namespace cogsense
