#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "gpdcal/errors.hpp"

namespace gpdcal {

inline double mean(std::span<const double> x) {
  if (x.empty()) throw data_error("mean: empty sample");
  double s = 0.0;
  for (double v : x) s += v;
  return s / static_cast<double>(x.size());
}

/// Unbiased sample variance (n - 1 denominator).
inline double variance(std::span<const double> x) {
  if (x.size() < 2) throw data_error("variance: need at least 2 observations");
  double m = mean(x);
  double s = 0.0;
  for (double v : x) s += (v - m) * (v - m);
  return s / static_cast<double>(x.size() - 1);
}

/// Linear-interpolation quantile of an ascending-sorted sample.
inline double quantile_sorted(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw data_error("quantile_sorted: empty sample");
  if (!(p >= 0.0 && p <= 1.0)) {
    throw domain_error("quantile_sorted: p must lie in [0, 1]");
  }
  const std::size_t n = sorted.size();
  double h = p * static_cast<double>(n - 1);
  std::size_t i = static_cast<std::size_t>(std::floor(h));
  if (i + 1 >= n) return sorted[n - 1];
  double w = h - static_cast<double>(i);
  return sorted[i] + w * (sorted[i + 1] - sorted[i]);
}

inline double median_sorted(std::span<const double> sorted) {
  return quantile_sorted(sorted, 0.5);
}

/// Kolmogorov-Smirnov distance between the empirical CDF of the sample and
/// the given analytic CDF.
inline double ks_statistic(std::vector<double> sample,
                           const std::function<double(double)>& cdf) {
  if (sample.empty()) throw data_error("ks_statistic: empty sample");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    double f = cdf(sample[i]);
    d = std::max(d, std::abs(f - static_cast<double>(i + 1) / n));
    d = std::max(d, std::abs(f - static_cast<double>(i) / n));
  }
  return d;
}

}  // namespace gpdcal
