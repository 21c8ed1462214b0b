#pragma once

#include <cstddef>
#include <vector>

#include "adl/types.hpp"

namespace adl {

/// Scalar view of a capture (here: acceleration magnitude), m/s^2.
struct ScalarSeries {
  double rate_hz = 100.0;
  std::vector<double> values;
};

/// Retained local maxima; parallel arrays, indices strictly increasing.
struct PeakSet {
  std::vector<std::size_t> indices;
  std::vector<double> values;

  std::size_t size() const { return indices.size(); }
  bool empty() const { return indices.empty(); }
};

inline constexpr double kDefaultAlpha = 0.1;
inline constexpr double kDefaultPeakSeparationMs = 250.0;
inline constexpr double kDefaultPeakFloor = 0.0;

/// Per-sample Euclidean norm of the three axes.
ScalarSeries magnitude(const Capture& c);

/// Single-pole recursive smoother: y[0] = x[0], y[i] = a*x[i] + (1-a)*y[i-1].
/// alpha must lie in (0, 1]; alpha = 1 is the identity.
ScalarSeries lowpass(const ScalarSeries& s, double alpha);

/// Local maxima above mean + prominence_floor * std, thinned so that kept
/// peaks are pairwise at least min_separation_ms apart. Candidates must be
/// strictly greater than both neighbours; a plateau counts once, at its
/// leftmost index. Selection is greedy in descending value order with ties
/// broken toward the smaller index.
PeakSet detect_peaks(const ScalarSeries& s, double min_separation_ms,
                     double prominence_floor);

}  // namespace adl
