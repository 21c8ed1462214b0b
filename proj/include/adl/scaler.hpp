#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace adl {

enum class ScalerKind { MinMax, ZScore, Identity };

std::string_view scaler_kind_name(ScalerKind k);
std::optional<ScalerKind> scaler_kind_from_name(std::string_view name);

/// Per-column affine transform x -> (x - a[i]) / b[i].
/// MinMax: a = column min, b = max - min. ZScore: a = mean, b = population
/// stddev. Identity: a = 0, b = 1. Degenerate columns keep b = 0 as a
/// sentinel and map to 0 on apply.
struct ScalerParams {
  ScalerKind kind = ScalerKind::Identity;
  std::vector<double> a;
  std::vector<double> b;

  std::size_t arity() const { return a.size(); }

  friend bool operator==(const ScalerParams&, const ScalerParams&) = default;
};

/// Fit on training rows only. All rows must share one arity; the result is
/// invariant under row permutation. Throws EmptyFitSet / ArityMismatch.
ScalerParams fit_scaler(ScalerKind kind,
                        const std::vector<std::vector<double>>& rows);

/// Throws ArityMismatch when x.size() != params.arity(). Output is not
/// clamped: values outside the fitted range scale past [0, 1].
std::vector<double> apply_scaler(const ScalerParams& params,
                                 std::span<const double> x);

}  // namespace adl
