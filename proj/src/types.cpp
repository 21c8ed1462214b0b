#include "adl/types.hpp"

namespace adl {

std::string_view label_name(AdlLabel label) {
  switch (label) {
    case AdlLabel::Running: return "running";
    case AdlLabel::Walking: return "walking";
    case AdlLabel::GoingUpstairs: return "going_upstairs";
    case AdlLabel::GoingDownstairs: return "going_downstairs";
    case AdlLabel::Standing: return "standing";
  }
  return "unknown";
}

std::optional<AdlLabel> label_from_name(std::string_view name) {
  for (AdlLabel label : all_labels()) {
    if (label_name(label) == name) return label;
  }
  return std::nullopt;
}

std::optional<AdlLabel> label_from_code(int code) {
  if (code < 0 || code >= kNumClasses) return std::nullopt;
  return static_cast<AdlLabel>(code);
}

}  // namespace adl
