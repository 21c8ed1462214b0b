#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

namespace adl {

/// The five activity classes, with stable codes 0..4.
enum class AdlLabel : int {
  Running = 0,
  Walking = 1,
  GoingUpstairs = 2,
  GoingDownstairs = 3,
  Standing = 4,
};

inline constexpr int kNumClasses = 5;

constexpr int label_code(AdlLabel label) { return static_cast<int>(label); }

std::string_view label_name(AdlLabel label);
std::optional<AdlLabel> label_from_name(std::string_view name);
std::optional<AdlLabel> label_from_code(int code);

constexpr std::array<AdlLabel, kNumClasses> all_labels() {
  return {AdlLabel::Running, AdlLabel::Walking, AdlLabel::GoingUpstairs,
          AdlLabel::GoingDownstairs, AdlLabel::Standing};
}

struct Sample {
  double t_ms = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

/// One labeled recording: nominally 5 s of tri-axial data at 100 Hz.
/// Timestamps are strictly increasing milliseconds.
struct Capture {
  AdlLabel label = AdlLabel::Standing;
  double rate_hz = 100.0;
  std::vector<Sample> samples;
};

}  // namespace adl
