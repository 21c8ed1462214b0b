#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace adl {

/// Shortest decimal form that parses back to the same double.
std::string format_double(double value);

/// Whole-token parse; rejects trailing garbage and non-finite values.
std::optional<double> parse_double(std::string_view token);
std::optional<long long> parse_int(std::string_view token);
std::optional<unsigned long long> parse_uint(std::string_view token);

std::string_view trim(std::string_view s);

}  // namespace adl
