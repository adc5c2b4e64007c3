#include "cogsense/robust.hpp"

#include <algorithm>
#include <cstddef>
#include <string>

#include "cogsense/errors.hpp"

namespace cogsense {

namespace {

void check_sample(std::span<const double> sample, std::size_t min_size,
                  const char* op) {
  if (sample.size() < min_size) {
    throw InvalidInput(std::string(op) + ": sample needs at least " +
                       std::to_string(min_size) + " values, got " +
                       std::to_string(sample.size()));
  }
  for (double v : sample) {
    if (!std::isfinite(v)) {
      throw InvalidInput(std::string(op) + ": sample holds a non-finite value");
    }
  }
}

std::vector<double> sorted_copy(std::span<const double> sample) {
  std::vector<double> x(sample.begin(), sample.end());
  std::sort(x.begin(), x.end());
  return x;
}

// Number of j != i with |x[j] - x[i]| <= t, x ascending. Differences are
// compared as rounded doubles, exactly the values a materialized row would
// hold, so counts agree with enumeration bit for bit.
std::size_t row_count_within(const std::vector<double>& x, std::size_t i,
                             double t) {
  const std::size_t n = x.size();
  std::size_t lo = i + 1;
  std::size_t hi = n;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (x[mid] - x[i] <= t) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  std::size_t count = lo - (i + 1);

  lo = 0;
  hi = i;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (x[i] - x[mid] <= t) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  count += i - lo;
  return count;
}

// k-th smallest (1-based) of the row multiset {|x[j] - x[i]| : j != i}.
// Value bisection: the interval (lo, hi] always contains the answer; once no
// double lies strictly between lo and hi, the answer is hi itself, an actual
// row element.
double row_kth_absdiff(const std::vector<double>& x, std::size_t i,
                       std::size_t k) {
  if (row_count_within(x, i, 0.0) >= k) {
    return 0.0;
  }
  double lo = 0.0;
  double hi = std::max(x.back() - x[i], x[i] - x.front());
  while (true) {
    const double mid = lo + (hi - lo) / 2.0;
    if (!(mid > lo && mid < hi)) {
      break;
    }
    if (row_count_within(x, i, mid) >= k) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

// Number of pairs i < j with x[j] - x[i] <= t, x ascending.
std::size_t pair_count_within(const std::vector<double>& x, double t) {
  const std::size_t n = x.size();
  std::size_t count = 0;
  std::size_t j = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (j <= i) {
      j = i + 1;
    }
    while (j < n && x[j] - x[i] <= t) {
      ++j;
    }
    count += j - i - 1;
  }
  return count;
}

// k-th smallest (1-based) pairwise distance, same bisection scheme as the
// row selection above.
double pair_kth_dist(const std::vector<double>& x, std::size_t k) {
  if (pair_count_within(x, 0.0) >= k) {
    return 0.0;
  }
  double lo = 0.0;
  double hi = x.back() - x.front();
  while (true) {
    const double mid = lo + (hi - lo) / 2.0;
    if (!(mid > lo && mid < hi)) {
      break;
    }
    if (pair_count_within(x, mid) >= k) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace

double median(std::span<const double> values) {
  check_sample(values, 1, "median");
  std::vector<double> x(values.begin(), values.end());
  const std::size_t n = x.size();
  auto mid = x.begin() + n / 2;
  std::nth_element(x.begin(), mid, x.end());
  if (n % 2 == 1) {
    return *mid;
  }
  const double above = *mid;
  const double below = *std::max_element(x.begin(), mid);
  return (below + above) / 2.0;
}

double quantile_sorted(std::span<const double> sorted, double p) {
  const std::size_t n = sorted.size();
  if (n == 0) {
    throw InvalidInput("quantile_sorted: empty range");
  }
  const double pos = p * static_cast<double>(n - 1);
  const auto idx = static_cast<std::size_t>(pos);
  const double frac = pos - static_cast<double>(idx);
  if (idx + 1 >= n || frac == 0.0) {
    return sorted[idx];
  }
  return sorted[idx] + frac * (sorted[idx + 1] - sorted[idx]);
}

double mean_difference(std::span<const double> sample) {
  check_sample(sample, 1, "mean_difference");
  const std::size_t n = sample.size();
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      sum += std::fabs(sample[i] - sample[j]);
    }
  }
  return sum / (static_cast<double>(n) * static_cast<double>(n));
}

double mad(std::span<const double> sample) {
  check_sample(sample, 1, "mad");
  const double med = median(sample);
  std::vector<double> dev;
  dev.reserve(sample.size());
  for (double v : sample) {
    dev.push_back(std::fabs(v - med));
  }
  return median(dev);
}

double sn_estimator(std::span<const double> sample) {
  check_sample(sample, 2, "sn_estimator");
  const std::vector<double> x = sorted_copy(sample);
  const std::size_t n = x.size();
  const std::size_t m = n - 1;  // row length
  std::vector<double> row_medians(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (m % 2 == 1) {
      row_medians[i] = row_kth_absdiff(x, i, (m + 1) / 2);
    } else {
      const double a = row_kth_absdiff(x, i, m / 2);
      const double b = row_kth_absdiff(x, i, m / 2 + 1);
      row_medians[i] = (a + b) / 2.0;
    }
  }
  return 1.192 * median(row_medians);
}

double qn_estimator(std::span<const double> sample) {
  check_sample(sample, 2, "qn_estimator");
  const std::vector<double> x = sorted_copy(sample);
  const std::size_t n = x.size();
  const std::size_t m = n * (n - 1) / 2;
  const double pos = 0.25 * static_cast<double>(m - 1);
  const auto idx = static_cast<std::size_t>(pos);
  const double frac = pos - static_cast<double>(idx);
  const double lo = pair_kth_dist(x, idx + 1);
  double q1 = lo;
  if (frac != 0.0 && idx + 2 <= m) {
    const double hi = pair_kth_dist(x, idx + 2);
    q1 = lo + frac * (hi - lo);
  }
  return 2.2 * q1;
}

QuartilePair quartiles(std::span<const double> sample) {
  check_sample(sample, 2, "quartiles");
  const std::vector<double> x = sorted_copy(sample);
  return {quantile_sorted(x, 0.25), quantile_sorted(x, 0.75)};
}

double medcouple(std::span<const double> sample) {
  check_sample(sample, 3, "medcouple");
  const double med = median(sample);
  std::vector<double> lows;
  std::vector<double> highs;
  for (double v : sample) {
    if (v < med) {
      lows.push_back(v);
    } else if (v > med) {
      highs.push_back(v);
    }
  }
  if (lows.empty() || highs.empty()) {
    throw DegenerateSample("medcouple: no pair straddles the sample median");
  }
  std::vector<double> kernels;
  kernels.reserve(lows.size() * highs.size());
  for (double xi : lows) {
    for (double xj : highs) {
      kernels.push_back(((xj - med) - (med - xi)) / (xj - xi));
    }
  }
  return median(kernels);
}

FenceFactors fence_factors(double mc) {
  return {1.5 * std::exp(-3.5 * mc), 1.5 * std::exp(4.0 * mc)};
}

MedcoupleFences adjusted_fences(std::span<const double> sample) {
  const double mc = medcouple(sample);
  const auto [q1, q3] = quartiles(sample);
  const double iqr = q3 - q1;
  const auto [h_l, h_r] = fence_factors(mc);
  return {mc, q1, q3, iqr, h_l, h_r, q1 - h_l * iqr, q3 + h_r * iqr};
}

}  // namespace cogsense
