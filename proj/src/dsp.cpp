#include "adl/dsp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "adl/error.hpp"
#include "adl/stats.hpp"

namespace adl {

ScalarSeries magnitude(const Capture& c) {
  ScalarSeries out;
  out.rate_hz = c.rate_hz;
  out.values.reserve(c.samples.size());
  for (const Sample& s : c.samples)
    out.values.push_back(std::sqrt(s.x * s.x + s.y * s.y + s.z * s.z));
  return out;
}

ScalarSeries lowpass(const ScalarSeries& s, double alpha) {
  if (!(alpha > 0.0) || alpha > 1.0)
    throw Error(Errc::AlphaOutOfRange,
                "alpha must lie in (0, 1], got " + std::to_string(alpha));
  ScalarSeries out;
  out.rate_hz = s.rate_hz;
  out.values.reserve(s.values.size());
  double prev = 0.0;
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    prev = i == 0 ? s.values[0] : alpha * s.values[i] + (1.0 - alpha) * prev;
    out.values.push_back(prev);
  }
  return out;
}

PeakSet detect_peaks(const ScalarSeries& s, double min_separation_ms,
                     double prominence_floor) {
  if (min_separation_ms < 0.0)
    throw Error(Errc::InvalidParams, "min_separation_ms must be >= 0");
  if (!(s.rate_hz > 0.0))
    throw Error(Errc::InvalidParams, "rate_hz must be positive");

  const std::vector<double>& v = s.values;
  const double threshold =
      stats::mean(v) + prominence_floor * stats::stddev(v);

  // Strict local maxima; a flat run counts once, at its first sample.
  std::vector<std::size_t> candidates;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    if (v[i] <= v[i - 1] || v[i] <= threshold) continue;
    std::size_t j = i;
    while (j + 1 < v.size() && v[j + 1] == v[i]) ++j;
    if (j + 1 < v.size() && v[j + 1] < v[i]) candidates.push_back(i);
    i = j;
  }

  std::vector<std::size_t> order(candidates.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (v[candidates[a]] != v[candidates[b]])
      return v[candidates[a]] > v[candidates[b]];
    return candidates[a] < candidates[b];
  });

  const double step_ms = 1000.0 / s.rate_hz;
  std::vector<std::size_t> kept;
  for (std::size_t oi : order) {
    const std::size_t idx = candidates[oi];
    bool clear = true;
    for (std::size_t k : kept) {
      const double gap_ms =
          step_ms * (idx > k ? double(idx - k) : double(k - idx));
      if (gap_ms < min_separation_ms) {
        clear = false;
        break;
      }
    }
    if (clear) kept.push_back(idx);
  }
  std::sort(kept.begin(), kept.end());

  PeakSet out;
  out.indices = std::move(kept);
  out.values.reserve(out.indices.size());
  for (std::size_t idx : out.indices) out.values.push_back(v[idx]);
  return out;
}

}  // namespace adl
