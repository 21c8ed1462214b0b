#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "adl/dsp.hpp"
#include "adl/types.hpp"

namespace adl {

inline constexpr int kFeatureCount = 15;

/// Per-capture feature row: the five greatest gaps between consecutive
/// peaks (ms, descending), four statistics of the peak values, six
/// statistics of the cleaned scalar signal, and the class label.
struct FeatureVector {
  std::array<double, 5> d{};  // d[0] >= ... >= d[4] >= 0, zero-padded
  double pk_avg = 0.0;
  double pk_std = 0.0;
  double pk_var = 0.0;
  double pk_med = 0.0;
  double raw_std = 0.0;
  double raw_avg = 0.0;
  double raw_max = 0.0;
  double raw_min = 0.0;
  double raw_var = 0.0;
  double raw_med = 0.0;
  AdlLabel label = AdlLabel::Standing;

  /// The 15 values in table-header order (d1..d5, pk_*, raw_*).
  std::array<double, kFeatureCount> values() const;
  static FeatureVector from_values(const std::array<double, kFeatureCount>& v,
                                   AdlLabel label);

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

/// The five nested column subsets, arity 15/10/6/4/2.
enum class DatasetVariant { D1, D2, D3, D4, D5 };

int variant_arity(DatasetVariant v);
std::string_view variant_name(DatasetVariant v);
std::optional<DatasetVariant> variant_from_name(std::string_view name);

constexpr std::array<DatasetVariant, 5> all_variants() {
  return {DatasetVariant::D1, DatasetVariant::D2, DatasetVariant::D3,
          DatasetVariant::D4, DatasetVariant::D5};
}

/// Statistics use population variance; medians of even-length sets average
/// the two central values. With fewer than five gaps d is zero-padded, with
/// no peaks all pk_* are zero.
FeatureVector extract_features(const ScalarSeries& s, const PeakSet& p,
                               AdlLabel label);

/// Column subset of a feature row, in table-header order.
std::vector<double> project(const FeatureVector& f, DatasetVariant v);

}  // namespace adl
