#include "adl/features.hpp"

#include <algorithm>
#include <cmath>

#include "adl/error.hpp"
#include "adl/stats.hpp"

namespace adl {

std::array<double, kFeatureCount> FeatureVector::values() const {
  return {d[0],    d[1],    d[2],    d[3],    d[4],   pk_avg, pk_std, pk_var,
          pk_med,  raw_std, raw_avg, raw_max, raw_min, raw_var, raw_med};
}

FeatureVector FeatureVector::from_values(
    const std::array<double, kFeatureCount>& v, AdlLabel label) {
  FeatureVector f;
  f.d = {v[0], v[1], v[2], v[3], v[4]};
  f.pk_avg = v[5];
  f.pk_std = v[6];
  f.pk_var = v[7];
  f.pk_med = v[8];
  f.raw_std = v[9];
  f.raw_avg = v[10];
  f.raw_max = v[11];
  f.raw_min = v[12];
  f.raw_var = v[13];
  f.raw_med = v[14];
  f.label = label;
  return f;
}

int variant_arity(DatasetVariant v) {
  switch (v) {
    case DatasetVariant::D1: return 15;
    case DatasetVariant::D2: return 10;
    case DatasetVariant::D3: return 6;
    case DatasetVariant::D4: return 4;
    case DatasetVariant::D5: return 2;
  }
  return 0;
}

std::string_view variant_name(DatasetVariant v) {
  switch (v) {
    case DatasetVariant::D1: return "d1";
    case DatasetVariant::D2: return "d2";
    case DatasetVariant::D3: return "d3";
    case DatasetVariant::D4: return "d4";
    case DatasetVariant::D5: return "d5";
  }
  return "unknown";
}

std::optional<DatasetVariant> variant_from_name(std::string_view name) {
  for (DatasetVariant v : all_variants()) {
    if (variant_name(v) == name) return v;
  }
  return std::nullopt;
}

FeatureVector extract_features(const ScalarSeries& s, const PeakSet& p,
                               AdlLabel label) {
  if (s.values.empty())
    throw Error(Errc::EmptySeries, "cannot extract features from no samples");

  FeatureVector f;
  f.label = label;

  const double step_ms = 1000.0 / s.rate_hz;
  std::vector<double> gaps;
  for (std::size_t i = 1; i < p.indices.size(); ++i)
    gaps.push_back(step_ms * double(p.indices[i] - p.indices[i - 1]));
  std::sort(gaps.begin(), gaps.end(), std::greater<>());
  for (std::size_t i = 0; i < f.d.size(); ++i)
    f.d[i] = i < gaps.size() ? gaps[i] : 0.0;

  if (!p.values.empty()) {
    f.pk_avg = stats::mean(p.values);
    f.pk_var = stats::variance(p.values);
    f.pk_std = std::sqrt(f.pk_var);
    f.pk_med = stats::median(p.values);
  }

  f.raw_avg = stats::mean(s.values);
  f.raw_var = stats::variance(s.values);
  f.raw_std = std::sqrt(f.raw_var);
  f.raw_med = stats::median(s.values);
  f.raw_max = *std::max_element(s.values.begin(), s.values.end());
  f.raw_min = *std::min_element(s.values.begin(), s.values.end());
  // Summation rounding can push the mean an ulp past the extremes.
  f.raw_avg = std::clamp(f.raw_avg, f.raw_min, f.raw_max);
  return f;
}

std::vector<double> project(const FeatureVector& f, DatasetVariant v) {
  const auto all = f.values();
  switch (v) {
    case DatasetVariant::D1:
      return {all.begin(), all.end()};
    case DatasetVariant::D2:
      return {all.begin() + 5, all.end()};
    case DatasetVariant::D3:
      return {all.begin() + 9, all.end()};
    case DatasetVariant::D4:
      return {f.raw_std, f.raw_avg, f.raw_var, f.raw_med};
    case DatasetVariant::D5:
      return {f.raw_std, f.raw_avg};
  }
  return {};
}

}  // namespace adl
