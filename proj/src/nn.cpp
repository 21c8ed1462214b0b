#include "adl/nn.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

#include "adl/error.hpp"
#include "adl/rng.hpp"

namespace adl {

std::string_view preset_name(Preset p) {
  switch (p) {
    case Preset::MlpBp: return "mlp_bp";
    case Preset::FfBp: return "ff_bp";
    case Preset::Deep: return "deep";
  }
  return "unknown";
}

std::optional<Preset> preset_from_name(std::string_view name) {
  for (Preset p : all_presets()) {
    if (preset_name(p) == name) return p;
  }
  return std::nullopt;
}

std::string_view activation_name(Activation a) {
  switch (a) {
    case Activation::Sigmoid: return "sigmoid";
    case Activation::Relu: return "relu";
  }
  return "unknown";
}

std::optional<Activation> activation_from_name(std::string_view name) {
  for (Activation a : {Activation::Sigmoid, Activation::Relu}) {
    if (activation_name(a) == name) return a;
  }
  return std::nullopt;
}

NetworkSpec make_spec(Preset preset, int input_arity, std::uint64_t seed) {
  NetworkSpec spec;
  spec.preset = preset;
  spec.input_arity = input_arity;
  spec.seed = seed;
  switch (preset) {
    case Preset::MlpBp:
      spec.hidden_layers = {2 * input_arity};
      spec.activation = Activation::Sigmoid;
      spec.learning_rate = 0.01;
      spec.l2_lambda = 0.0;
      break;
    case Preset::FfBp:
      spec.hidden_layers = {2 * input_arity, input_arity};
      spec.activation = Activation::Sigmoid;
      spec.learning_rate = 0.01;
      spec.l2_lambda = 0.0;
      break;
    case Preset::Deep:
      spec.hidden_layers = {32, 16, 8};
      spec.activation = Activation::Relu;
      spec.learning_rate = 0.005;
      spec.l2_lambda = 1e-4;
      break;
  }
  return spec;
}

void validate_spec(const NetworkSpec& spec) {
  if (spec.input_arity < 1)
    throw Error(Errc::InvalidSpec, "input_arity must be >= 1");
  for (int w : spec.hidden_layers) {
    if (w < 1) throw Error(Errc::InvalidSpec, "hidden layer width must be >= 1");
  }
  if (!(spec.learning_rate >= 0.0))
    throw Error(Errc::InvalidSpec, "learning_rate must be >= 0");
  if (!(spec.l2_lambda >= 0.0))
    throw Error(Errc::InvalidSpec, "l2_lambda must be >= 0");
  if (spec.l2_lambda > 0.0 && spec.preset != Preset::Deep)
    throw Error(Errc::InvalidSpec,
                "l2_lambda > 0 is only supported by the deep preset");
}

namespace {

std::vector<std::size_t> layer_widths(const NetworkSpec& spec) {
  std::vector<std::size_t> widths;
  widths.push_back(std::size_t(spec.input_arity));
  for (int w : spec.hidden_layers) widths.push_back(std::size_t(w));
  widths.push_back(std::size_t(kNumClasses));
  return widths;
}

double activate(Activation a, double z) {
  return a == Activation::Sigmoid ? 1.0 / (1.0 + std::exp(-z))
                                  : (z > 0.0 ? z : 0.0);
}

// Both activations admit a derivative in terms of their own output.
double activate_grad(Activation a, double out) {
  return a == Activation::Sigmoid ? out * (1.0 - out) : (out > 0.0 ? 1.0 : 0.0);
}

struct Trace {
  // acts[0] is the input; acts[l] for l in [1, L) are hidden activations.
  std::vector<std::vector<double>> acts;
  std::vector<double> logits;
};

Trace run_forward(const Model& m, std::span<const double> x) {
  if (x.size() != std::size_t(m.spec.input_arity))
    throw Error(Errc::ArityMismatch,
                "model expects arity " + std::to_string(m.spec.input_arity) +
                    ", got " + std::to_string(x.size()));
  Trace t;
  t.acts.emplace_back(x.begin(), x.end());
  const std::size_t layers = m.weights.size();
  for (std::size_t l = 0; l < layers; ++l) {
    const Mat& w = m.weights[l];
    const std::vector<double>& prev = t.acts.back();
    std::vector<double> z(m.biases[l]);
    for (std::size_t r = 0; r < w.rows; ++r) {
      const double a = prev[r];
      if (a == 0.0) continue;
      const double* wr = w.data.data() + r * w.cols;
      for (std::size_t c = 0; c < w.cols; ++c) z[c] += a * wr[c];
    }
    if (l + 1 < layers) {
      for (double& v : z) v = activate(m.spec.activation, v);
      t.acts.push_back(std::move(z));
    } else {
      t.logits = std::move(z);
    }
  }
  return t;
}

std::array<double, kNumClasses> softmax(const std::vector<double>& logits) {
  std::array<double, kNumClasses> p{};
  const double zmax = *std::max_element(logits.begin(), logits.end());
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    p[i] = std::exp(logits[i] - zmax);
    sum += p[i];
  }
  for (double& v : p) v /= sum;
  return p;
}

double data_loss(const std::vector<double>& logits, AdlLabel y) {
  const double zmax = *std::max_element(logits.begin(), logits.end());
  double sum = 0.0;
  for (double z : logits) sum += std::exp(z - zmax);
  return zmax + std::log(sum) - logits[std::size_t(label_code(y))];
}

double l2_penalty(const Model& m) {
  if (m.spec.l2_lambda == 0.0) return 0.0;
  double sq = 0.0;
  for (const Mat& w : m.weights)
    for (double v : w.data) sq += v * v;
  return 0.5 * m.spec.l2_lambda * sq;
}

}  // namespace

Model init_model(const NetworkSpec& spec, DatasetVariant variant,
                 ScalerParams scaler) {
  validate_spec(spec);
  Model m;
  m.spec = spec;
  m.variant = variant;
  m.scaler = std::move(scaler);

  const auto widths = layer_widths(spec);
  std::mt19937_64 rng(spec.seed);
  for (std::size_t l = 0; l + 1 < widths.size(); ++l) {
    Mat w(widths[l], widths[l + 1]);
    const double limit = std::sqrt(6.0 / double(widths[l] + widths[l + 1]));
    for (double& v : w.data) v = (2.0 * uniform01(rng) - 1.0) * limit;
    m.weights.push_back(std::move(w));
    m.biases.emplace_back(widths[l + 1], 0.0);
  }
  return m;
}

std::array<double, kNumClasses> forward(const Model& m,
                                        std::span<const double> x) {
  return softmax(run_forward(m, x).logits);
}

double loss(const Model& m, std::span<const double> x, AdlLabel y) {
  return data_loss(run_forward(m, x).logits, y) + l2_penalty(m);
}

Gradients compute_gradients(const Model& m, std::span<const double> x,
                            AdlLabel y) {
  Trace t = run_forward(m, x);
  const auto p = softmax(t.logits);

  Gradients g;
  g.loss = data_loss(t.logits, y) + l2_penalty(m);
  g.weights.reserve(m.weights.size());
  g.biases.reserve(m.biases.size());
  for (const Mat& w : m.weights) g.weights.emplace_back(w.rows, w.cols);
  for (const auto& b : m.biases) g.biases.emplace_back(b.size(), 0.0);

  std::vector<double> delta(p.begin(), p.end());
  delta[std::size_t(label_code(y))] -= 1.0;

  for (std::size_t l = m.weights.size(); l-- > 0;) {
    const Mat& w = m.weights[l];
    const std::vector<double>& prev = t.acts[l];
    Mat& gw = g.weights[l];
    for (std::size_t r = 0; r < w.rows; ++r) {
      const double a = prev[r];
      double* gr = gw.data.data() + r * w.cols;
      for (std::size_t c = 0; c < w.cols; ++c) gr[c] = a * delta[c];
    }
    if (m.spec.l2_lambda != 0.0) {
      for (std::size_t i = 0; i < w.data.size(); ++i)
        gw.data[i] += m.spec.l2_lambda * w.data[i];
    }
    g.biases[l] = delta;

    if (l > 0) {
      std::vector<double> next(w.rows, 0.0);
      for (std::size_t r = 0; r < w.rows; ++r) {
        const double* wr = w.data.data() + r * w.cols;
        double sum = 0.0;
        for (std::size_t c = 0; c < w.cols; ++c) sum += wr[c] * delta[c];
        next[r] = sum * activate_grad(m.spec.activation, prev[r]);
      }
      delta = std::move(next);
    }
  }
  return g;
}

double backprop_step(Model& m, std::span<const double> x, AdlLabel y) {
  Gradients g = compute_gradients(m, x, y);
  if (!std::isfinite(g.loss))
    throw Error(Errc::NonFiniteLoss, "loss diverged to a non-finite value");
  for (const Mat& gw : g.weights)
    for (double v : gw.data)
      if (!std::isfinite(v))
        throw Error(Errc::NonFiniteLoss, "weight gradient is non-finite");
  for (const auto& gb : g.biases)
    for (double v : gb)
      if (!std::isfinite(v))
        throw Error(Errc::NonFiniteLoss, "bias gradient is non-finite");

  const double lr = m.spec.learning_rate;
  for (std::size_t l = 0; l < m.weights.size(); ++l) {
    for (std::size_t i = 0; i < m.weights[l].data.size(); ++i)
      m.weights[l].data[i] -= lr * g.weights[l].data[i];
    for (std::size_t i = 0; i < m.biases[l].size(); ++i)
      m.biases[l][i] -= lr * g.biases[l][i];
  }
  return g.loss;
}

AdlLabel predict(const Model& m, std::span<const double> x) {
  const auto p = forward(m, x);
  std::size_t best = 0;
  for (std::size_t i = 1; i < p.size(); ++i)
    if (p[i] > p[best]) best = i;
  return *label_from_code(int(best));
}

GradCheckResult grad_check(const Model& m, std::span<const double> x,
                           AdlLabel y, double h) {
  Gradients g = compute_gradients(m, x, y);
  Model probe = m;
  GradCheckResult res;

  auto check_param = [&](double& slot, double analytic) {
    const double saved = slot;
    slot = saved + h;
    const double up = loss(probe, x, y);
    slot = saved - h;
    const double down = loss(probe, x, y);
    slot = saved;
    const double numeric = (up - down) / (2.0 * h);
    const double rel = std::fabs(analytic - numeric) /
                       std::max({std::fabs(analytic), std::fabs(numeric), 1.0});
    res.worst_rel_error = std::max(res.worst_rel_error, rel);
    ++res.parameters_checked;
  };

  for (std::size_t l = 0; l < probe.weights.size(); ++l) {
    for (std::size_t i = 0; i < probe.weights[l].data.size(); ++i)
      check_param(probe.weights[l].data[i], g.weights[l].data[i]);
    for (std::size_t i = 0; i < probe.biases[l].size(); ++i)
      check_param(probe.biases[l][i], g.biases[l][i]);
  }
  return res;
}

namespace {

constexpr char kMagic[4] = {'A', 'D', 'L', 'M'};
constexpr std::uint32_t kVersion = 1;

void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(char((v >> (8 * i)) & 0xff));
}

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(char((v >> (8 * i)) & 0xff));
}

void put_i32(std::string& out, std::int32_t v) {
  put_u32(out, std::uint32_t(v));
}

void put_f64(std::string& out, double v) {
  put_u64(out, std::bit_cast<std::uint64_t>(v));
}

struct ByteReader {
  std::string_view bytes;
  std::size_t pos = 0;

  void need(std::size_t n) const {
    if (pos + n > bytes.size())
      throw Error(Errc::TruncatedFile,
                  "model stream ends after " + std::to_string(bytes.size()) +
                      " bytes");
  }
  std::uint8_t u8() {
    need(1);
    return std::uint8_t(bytes[pos++]);
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t(std::uint8_t(bytes[pos++])) << (8 * i);
    return v;
  }
  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t(std::uint8_t(bytes[pos++])) << (8 * i);
    return v;
  }
  std::int32_t i32() { return std::int32_t(u32()); }
  double f64() { return std::bit_cast<double>(u64()); }
  std::vector<double> f64s(std::uint64_t n) {
    need(std::size_t(n) * 8);
    std::vector<double> out(static_cast<std::size_t>(n), 0.0);
    for (double& v : out) v = f64();
    return out;
  }
};

}  // namespace

std::string save_model(const Model& m) {
  std::string out;
  out.append(kMagic, 4);
  put_u32(out, kVersion);

  out.push_back(char(m.spec.preset));
  put_i32(out, m.spec.input_arity);
  put_u32(out, std::uint32_t(m.spec.hidden_layers.size()));
  for (int w : m.spec.hidden_layers) put_i32(out, w);
  out.push_back(char(m.spec.activation));
  put_f64(out, m.spec.learning_rate);
  put_f64(out, m.spec.l2_lambda);
  put_u64(out, m.spec.seed);

  out.push_back(char(m.variant));
  out.push_back(char(m.scaler.kind));
  put_u64(out, m.scaler.a.size());
  for (double v : m.scaler.a) put_f64(out, v);
  for (double v : m.scaler.b) put_f64(out, v);

  put_u32(out, std::uint32_t(m.weights.size()));
  for (std::size_t l = 0; l < m.weights.size(); ++l) {
    put_u64(out, m.weights[l].rows);
    put_u64(out, m.weights[l].cols);
    for (double v : m.weights[l].data) put_f64(out, v);
    for (double v : m.biases[l]) put_f64(out, v);
  }
  return out;
}

void save_model(std::ostream& out, const Model& m) {
  const std::string bytes = save_model(m);
  out.write(bytes.data(), std::streamsize(bytes.size()));
  if (!out) throw Error(Errc::IoError, "failed to write model stream");
}

Model load_model_from_string(std::string_view bytes) {
  ByteReader r{bytes};
  r.need(4);
  if (std::memcmp(bytes.data(), kMagic, 4) != 0)
    throw Error(Errc::BadMagic, "not a model file");
  r.pos = 4;
  const std::uint32_t version = r.u32();
  if (version != kVersion)
    throw Error(Errc::VersionMismatch,
                "model version " + std::to_string(version) +
                    ", expected " + std::to_string(kVersion));

  Model m;
  const std::uint8_t preset = r.u8();
  if (preset > std::uint8_t(Preset::Deep))
    throw Error(Errc::InvalidSpec, "unknown preset code");
  m.spec.preset = Preset(preset);
  m.spec.input_arity = r.i32();
  const std::uint32_t nhidden = r.u32();
  m.spec.hidden_layers.reserve(nhidden);
  for (std::uint32_t i = 0; i < nhidden; ++i)
    m.spec.hidden_layers.push_back(r.i32());
  const std::uint8_t act = r.u8();
  if (act > std::uint8_t(Activation::Relu))
    throw Error(Errc::InvalidSpec, "unknown activation code");
  m.spec.activation = Activation(act);
  m.spec.learning_rate = r.f64();
  m.spec.l2_lambda = r.f64();
  m.spec.seed = r.u64();

  const std::uint8_t variant = r.u8();
  if (variant > std::uint8_t(DatasetVariant::D5))
    throw Error(Errc::InvalidSpec, "unknown dataset variant code");
  m.variant = DatasetVariant(variant);
  const std::uint8_t kind = r.u8();
  if (kind > std::uint8_t(ScalerKind::Identity))
    throw Error(Errc::InvalidSpec, "unknown scaler kind code");
  m.scaler.kind = ScalerKind(kind);
  const std::uint64_t arity = r.u64();
  m.scaler.a = r.f64s(arity);
  m.scaler.b = r.f64s(arity);

  const std::uint32_t layers = r.u32();
  for (std::uint32_t l = 0; l < layers; ++l) {
    const std::uint64_t rows = r.u64();
    const std::uint64_t cols = r.u64();
    r.need(std::size_t(rows) * std::size_t(cols) * 8 + std::size_t(cols) * 8);
    Mat w{std::size_t(rows), std::size_t(cols)};
    for (double& v : w.data) v = r.f64();
    m.weights.push_back(std::move(w));
    m.biases.push_back(r.f64s(cols));
  }

  const auto widths = layer_widths(m.spec);
  if (m.weights.size() + 1 != widths.size())
    throw Error(Errc::InvalidSpec, "layer count does not match spec");
  for (std::size_t l = 0; l < m.weights.size(); ++l) {
    if (m.weights[l].rows != widths[l] || m.weights[l].cols != widths[l + 1])
      throw Error(Errc::InvalidSpec, "layer shape does not match spec");
  }
  return m;
}

Model load_model(std::istream& in) {
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  return load_model_from_string(bytes);
}

void save_model_file(const std::string& path, const Model& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::IoError, "cannot open " + path + " for writing");
  save_model(out, m);
}

Model load_model_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot open " + path);
  return load_model(in);
}

}  // namespace adl
