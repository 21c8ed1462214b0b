#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "adl/features.hpp"
#include "adl/types.hpp"

namespace adl {

/// Capture text format: a `# adl=<name> rate_hz=<number>` header line, then
/// one `t_ms,x,y,z` row per sample. Line numbers in errors are 1-based and
/// count every line including the header and blanks.
Capture parse_capture(std::istream& in);
Capture parse_capture(std::string_view text);

std::string serialize_capture(const Capture& c);

/// Checks a parsed capture against the recording contract: span within
/// [4500, 5500] ms and a median sample gap within 20% of the nominal rate.
/// Returns its argument on success.
const Capture& validate_capture(const Capture& c);

extern const std::string_view kFeatureTableHeader;

std::string write_feature_table(std::span<const FeatureVector> rows);
std::vector<FeatureVector> read_feature_table(std::istream& in);
std::vector<FeatureVector> read_feature_table(std::string_view text);

Capture read_capture_file(const std::string& path);
void write_capture_file(const std::string& path, const Capture& c);
std::vector<FeatureVector> read_feature_table_file(const std::string& path);
void write_feature_table_file(const std::string& path,
                              std::span<const FeatureVector> rows);

}  // namespace adl
