#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "adl/features.hpp"
#include "adl/nn.hpp"
#include "adl/scaler.hpp"
#include "adl/types.hpp"

namespace adl {

/// Input preprocessing arm. Shallow presets pair Raw with identity scaling
/// and Normalized with min-max; the deep preset row-normalizes to unit L2
/// in both arms and adds z-score columns in the Normalized arm.
enum class NormArm { Raw, Normalized };

std::string_view norm_arm_name(NormArm a);
std::optional<NormArm> norm_arm_from_name(std::string_view name);

constexpr std::array<NormArm, 2> all_norm_arms() {
  return {NormArm::Raw, NormArm::Normalized};
}

ScalerKind scaler_for(Preset preset, NormArm arm);

/// True when the preset rescales each input row to unit Euclidean norm
/// before the column scaler.
bool uses_l2_rows(Preset preset);

struct TrainingBudget {
  std::uint64_t max_updates = 0;
};

struct EvalResult {
  double accuracy = 0.0;
  // confusion[truth][predicted]
  std::array<std::array<std::uint64_t, kNumClasses>, kNumClasses> confusion{};

  std::uint64_t total() const;
};

EvalResult tally_predictions(std::span<const AdlLabel> truth,
                             std::span<const AdlLabel> predicted);

/// Index split over one feature table; both sides are sorted ascending.
struct Split {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

/// Per-class split at the given test fraction; every class keeps at least
/// one row on each side. Throws ClassTooSmall when a class has fewer than
/// two rows, InvalidParams when the fraction is outside (0, 1).
Split stratified_split(std::span<const FeatureVector> rows,
                       double test_fraction, std::uint64_t seed);

struct TrainResult {
  Model model;
  // (update index, loss) samples, every max(1, budget / 1000) updates.
  std::vector<std::pair<std::uint64_t, double>> loss_history;
};

/// Fits the arm's scaler on the projected training rows, then runs
/// single-example SGD in a seeded shuffled order, cycling through the
/// training set until the budget is spent.
TrainResult train(const NetworkSpec& spec, DatasetVariant variant, NormArm arm,
                  std::span<const FeatureVector> rows, TrainingBudget budget);

/// Applies the model's embedded preprocessing, so rows are raw features.
EvalResult evaluate(const Model& m, std::span<const FeatureVector> rows);

struct GridConfig {
  std::vector<Preset> presets{Preset::MlpBp, Preset::FfBp, Preset::Deep};
  std::vector<DatasetVariant> variants{
      DatasetVariant::D1, DatasetVariant::D2, DatasetVariant::D3,
      DatasetVariant::D4, DatasetVariant::D5};
  std::vector<NormArm> arms{NormArm::Raw, NormArm::Normalized};
  std::vector<std::uint64_t> budgets{10000, 20000, 40000};
  double test_fraction = 0.3;
  std::uint64_t master_seed = 1;
  int jobs = 1;

  // Optional per-preset overrides; unset fields keep the preset default.
  std::optional<double> lr_mlp_bp;
  std::optional<double> lr_ff_bp;
  std::optional<double> lr_deep;
  std::optional<double> deep_lambda;
  std::optional<std::vector<int>> mlp_hidden;
  std::optional<std::vector<int>> ff_hidden;
  std::optional<std::vector<int>> deep_hidden;
};

struct GridCell {
  Preset preset = Preset::MlpBp;
  DatasetVariant variant = DatasetVariant::D1;
  NormArm arm = NormArm::Raw;
  std::uint64_t budget = 0;
  std::uint64_t seed = 0;
  std::optional<EvalResult> result;
  std::string error;  // non-empty when the cell failed
};

struct GridResult {
  GridConfig config;
  // Canonical order: preset, then variant, then arm, then budget.
  std::vector<GridCell> cells;
};

std::uint64_t split_seed(std::uint64_t master_seed);
std::uint64_t cell_seed(std::uint64_t master_seed, Preset preset,
                        DatasetVariant variant, NormArm arm,
                        std::uint64_t budget);

/// One shared stratified split, then one train + eval per grid cell.
/// Per-cell failures are recorded in the cell, not thrown.
GridResult run_grid(const GridConfig& cfg, std::span<const FeatureVector> rows);

struct ReportFiles {
  std::string grid_csv;
  std::string best_csv;
  // (file name, content), one per preset: fig1_raw.csv, fig1_normalized.csv, ...
  std::vector<std::pair<std::string, std::string>> figures;
};

/// Ties in best.csv resolve to the smaller budget, then the earlier variant.
ReportFiles report(const GridResult& g);
void write_reports(const GridResult& g, const std::string& dir);

}  // namespace adl
