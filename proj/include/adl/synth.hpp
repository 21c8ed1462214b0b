#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "adl/types.hpp"

namespace adl {

/// Waveform parameters for one activity class.
struct ClassSynth {
  double freq_hz = 0.0;   // 0 disables the oscillatory part
  double amp = 0.0;
  double z_bias = 0.0;
  double noise_std = -1.0;  // < 0 means use SynthParams::noise_std
};

struct SynthParams {
  // Indexed by label code.
  std::array<ClassSynth, kNumClasses> by_class{};
  double harmonic2 = 0.3;   // relative amplitude of the double-rate term
  double jitter = 0.05;     // relative frequency jitter per capture
  double noise_std = 0.4;
  double rate_hz = 100.0;
  double duration_s = 5.0;
  double gravity = 9.81;

  static SynthParams defaults();
};

/// One synthetic capture; the same (params, seed) pair always yields the
/// same samples. Throws InvalidParams on non-positive rate or duration,
/// negative amplitude or noise, or jitter outside [0, 0.5].
Capture generate_capture(AdlLabel label, const SynthParams& params,
                         std::uint64_t seed);

/// per_class captures for every class, grouped by class in label-code
/// order. Throws InvalidParams when per_class < 1.
std::vector<Capture> generate_corpus(int per_class, const SynthParams& params,
                                     std::uint64_t master_seed);

}  // namespace adl
