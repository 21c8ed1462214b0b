#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "adl/features.hpp"
#include "adl/scaler.hpp"
#include "adl/types.hpp"

namespace adl {

enum class Preset { MlpBp, FfBp, Deep };
enum class Activation { Sigmoid, Relu };

std::string_view preset_name(Preset p);
std::optional<Preset> preset_from_name(std::string_view name);
std::string_view activation_name(Activation a);
std::optional<Activation> activation_from_name(std::string_view name);

constexpr std::array<Preset, 3> all_presets() {
  return {Preset::MlpBp, Preset::FfBp, Preset::Deep};
}

/// Shape and training hyper-parameters for one network.
struct NetworkSpec {
  Preset preset = Preset::MlpBp;
  int input_arity = kFeatureCount;
  std::vector<int> hidden_layers;
  Activation activation = Activation::Sigmoid;
  double learning_rate = 0.01;
  double l2_lambda = 0.0;
  std::uint64_t seed = 0;

  friend bool operator==(const NetworkSpec&, const NetworkSpec&) = default;
};

/// Preset defaults: MlpBp {2a} sigmoid lr .01, FfBp {2a, a} sigmoid lr .01,
/// Deep {32, 16, 8} relu lr .005 with l2 1e-4.
NetworkSpec make_spec(Preset preset, int input_arity, std::uint64_t seed);

/// Throws InvalidSpec on non-positive arity or layer width, learning_rate
/// < 0, l2_lambda < 0, or l2_lambda > 0 outside the Deep preset.
void validate_spec(const NetworkSpec& spec);

/// Row-major dense matrix, rows = fan-in, cols = fan-out.
struct Mat {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Mat() = default;
  Mat(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double operator()(std::size_t r, std::size_t c) const {
    return data[r * cols + c];
  }

  friend bool operator==(const Mat&, const Mat&) = default;
};

/// A trained (or training) network plus the preprocessing it expects.
struct Model {
  NetworkSpec spec;
  DatasetVariant variant = DatasetVariant::D1;
  ScalerParams scaler;
  std::vector<Mat> weights;               // one per layer transition
  std::vector<std::vector<double>> biases;  // one per non-input layer

  friend bool operator==(const Model&, const Model&) = default;
};

/// Glorot-uniform weights from mt19937_64(spec.seed), zero biases.
Model init_model(const NetworkSpec& spec, DatasetVariant variant,
                 ScalerParams scaler);

/// Softmax class probabilities for one already-scaled input row.
/// Throws ArityMismatch when x.size() != spec.input_arity.
std::array<double, kNumClasses> forward(const Model& m,
                                        std::span<const double> x);

/// Cross-entropy of the true class plus (l2_lambda / 2) * sum of squared
/// weights; biases are excluded from the penalty.
double loss(const Model& m, std::span<const double> x, AdlLabel y);

struct Gradients {
  std::vector<Mat> weights;
  std::vector<std::vector<double>> biases;
  double loss = 0.0;
};

Gradients compute_gradients(const Model& m, std::span<const double> x,
                            AdlLabel y);

/// One SGD update on one example; returns the loss before the update.
/// Throws NonFiniteLoss when the loss or any gradient is non-finite.
double backprop_step(Model& m, std::span<const double> x, AdlLabel y);

/// Predicted class; ties resolve to the smaller class code.
AdlLabel predict(const Model& m, std::span<const double> x);

struct GradCheckResult {
  double worst_rel_error = 0.0;
  std::size_t parameters_checked = 0;
};

/// Compares analytic gradients against central differences with step h
/// over every parameter, using relative error scaled by
/// max(|analytic|, |numeric|, 1).
GradCheckResult grad_check(const Model& m, std::span<const double> x,
                           AdlLabel y, double h = 1e-5);

/// Little-endian binary model format, magic "ADLM", version 1.
void save_model(std::ostream& out, const Model& m);
std::string save_model(const Model& m);
Model load_model(std::istream& in);
Model load_model_from_string(std::string_view bytes);
void save_model_file(const std::string& path, const Model& m);
Model load_model_file(const std::string& path);

}  // namespace adl
