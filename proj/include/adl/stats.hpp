#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

namespace adl::stats {

inline double mean(std::span<const double> v) {
  if (v.empty()) return 0.0;
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

/// Population variance (divide by n).
inline double variance(std::span<const double> v) {
  if (v.empty()) return 0.0;
  const double mu = mean(v);
  double ss = 0.0;
  for (double x : v) {
    const double d = x - mu;
    ss += d * d;
  }
  return ss / static_cast<double>(v.size());
}

inline double stddev(std::span<const double> v) {
  return std::sqrt(variance(v));
}

/// Median of an even-length set is the mean of the two central values.
inline double median(std::span<const double> v) {
  if (v.empty()) return 0.0;
  std::vector<double> s(v.begin(), v.end());
  std::sort(s.begin(), s.end());
  const std::size_t n = s.size();
  return (n % 2 == 1) ? s[n / 2] : 0.5 * (s[n / 2 - 1] + s[n / 2]);
}

}  // namespace adl::stats
