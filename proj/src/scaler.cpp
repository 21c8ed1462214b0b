#include "adl/scaler.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "adl/error.hpp"
#include "adl/stats.hpp"

namespace adl {

std::string_view scaler_kind_name(ScalerKind k) {
  switch (k) {
    case ScalerKind::MinMax: return "minmax";
    case ScalerKind::ZScore: return "zscore";
    case ScalerKind::Identity: return "identity";
  }
  return "unknown";
}

std::optional<ScalerKind> scaler_kind_from_name(std::string_view name) {
  for (ScalerKind k :
       {ScalerKind::MinMax, ScalerKind::ZScore, ScalerKind::Identity}) {
    if (scaler_kind_name(k) == name) return k;
  }
  return std::nullopt;
}

ScalerParams fit_scaler(ScalerKind kind,
                        const std::vector<std::vector<double>>& rows) {
  if (rows.empty())
    throw Error(Errc::EmptyFitSet, "cannot fit a scaler on zero rows");
  const std::size_t arity = rows.front().size();
  for (const auto& row : rows) {
    if (row.size() != arity)
      throw Error(Errc::ArityMismatch,
                  "fit rows have arity " + std::to_string(arity) + " and " +
                      std::to_string(row.size()));
  }

  ScalerParams out;
  out.kind = kind;
  out.a.assign(arity, 0.0);
  out.b.assign(arity, 1.0);
  if (kind == ScalerKind::Identity) return out;

  std::vector<double> column(rows.size());
  for (std::size_t c = 0; c < arity; ++c) {
    for (std::size_t r = 0; r < rows.size(); ++r) column[r] = rows[r][c];
    // Sorting first makes the fit independent of row order.
    std::sort(column.begin(), column.end());
    if (kind == ScalerKind::MinMax) {
      out.a[c] = column.front();
      out.b[c] = column.back() - column.front();
    } else {
      out.a[c] = stats::mean(column);
      out.b[c] = stats::stddev(column);
    }
  }
  return out;
}

std::vector<double> apply_scaler(const ScalerParams& params,
                                 std::span<const double> x) {
  if (x.size() != params.arity())
    throw Error(Errc::ArityMismatch,
                "scaler arity " + std::to_string(params.arity()) +
                    ", input arity " + std::to_string(x.size()));
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    out[i] = params.b[i] == 0.0 ? 0.0 : (x[i] - params.a[i]) / params.b[i];
  return out;
}

}  // namespace adl
