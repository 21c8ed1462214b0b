#include "adl/synth.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "adl/error.hpp"
#include "adl/rng.hpp"

namespace adl {

SynthParams SynthParams::defaults() {
  SynthParams p;
  p.by_class[label_code(AdlLabel::Running)] = {2.9, 6.0, 0.0, -1.0};
  p.by_class[label_code(AdlLabel::Walking)] = {1.9, 2.5, 0.0, -1.0};
  p.by_class[label_code(AdlLabel::GoingUpstairs)] = {1.6, 3.0, 0.4, -1.0};
  p.by_class[label_code(AdlLabel::GoingDownstairs)] = {1.7, 3.5, -0.4, -1.0};
  p.by_class[label_code(AdlLabel::Standing)] = {0.0, 0.15, 0.0, 0.1};
  return p;
}

namespace {

void check_params(const SynthParams& p) {
  if (!(p.rate_hz > 0.0))
    throw Error(Errc::InvalidParams, "rate_hz must be positive");
  if (!(p.duration_s > 0.0))
    throw Error(Errc::InvalidParams, "duration_s must be positive");
  if (p.jitter < 0.0 || p.jitter > 0.5)
    throw Error(Errc::InvalidParams, "jitter must lie in [0, 0.5]");
  if (p.noise_std < 0.0)
    throw Error(Errc::InvalidParams, "noise_std must be >= 0");
  if (p.harmonic2 < 0.0)
    throw Error(Errc::InvalidParams, "harmonic2 must be >= 0");
  for (const ClassSynth& c : p.by_class) {
    if (c.freq_hz < 0.0)
      throw Error(Errc::InvalidParams, "class frequency must be >= 0");
    if (c.amp < 0.0)
      throw Error(Errc::InvalidParams, "class amplitude must be >= 0");
  }
}

}  // namespace

Capture generate_capture(AdlLabel label, const SynthParams& params,
                         std::uint64_t seed) {
  check_params(params);
  const ClassSynth& cls = params.by_class[std::size_t(label_code(label))];
  const double noise_std = cls.noise_std >= 0.0 ? cls.noise_std : params.noise_std;

  std::mt19937_64 rng(seed);
  const double f =
      cls.freq_hz * (1.0 + params.jitter * (2.0 * uniform01(rng) - 1.0));
  const double phase = 2.0 * std::numbers::pi * uniform01(rng);
  const double phase2 = 2.0 * std::numbers::pi * uniform01(rng);

  Capture c;
  c.label = label;
  c.rate_hz = params.rate_hz;
  const auto n = std::size_t(std::lround(params.duration_s * params.rate_hz));
  c.samples.reserve(n);
  const double w = 2.0 * std::numbers::pi * f;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = double(i) / params.rate_hz;
    Sample s;
    s.t_ms = t * 1000.0;
    s.z = params.gravity + cls.z_bias +
          cls.amp * (std::sin(w * t + phase) +
                     params.harmonic2 * std::sin(2.0 * w * t + phase2)) +
          noise_std * normal01(rng);
    s.x = 0.4 * cls.amp * std::sin(w * t + phase + 2.1) +
          noise_std * normal01(rng);
    s.y = 0.3 * cls.amp * std::sin(w * t + phase + 4.2) +
          noise_std * normal01(rng);
    c.samples.push_back(s);
  }
  return c;
}

std::vector<Capture> generate_corpus(int per_class, const SynthParams& params,
                                     std::uint64_t master_seed) {
  if (per_class < 1)
    throw Error(Errc::InvalidParams, "per_class must be >= 1, got " +
                                         std::to_string(per_class));
  check_params(params);
  std::vector<Capture> out;
  out.reserve(std::size_t(per_class) * kNumClasses);
  for (AdlLabel label : all_labels()) {
    const std::uint64_t class_seed =
        mix64(master_seed, std::uint64_t(label_code(label)) + 1);
    for (int k = 0; k < per_class; ++k)
      out.push_back(
          generate_capture(label, params, mix64(class_seed, std::uint64_t(k))));
  }
  return out;
}

}  // namespace adl
