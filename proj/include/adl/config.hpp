#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace adl {

/// key=value settings from a run config file. Lines starting with '#' and
/// blank lines are skipped; later duplicates win. Unknown keys throw
/// BadConfig at load time, bad numeric text throws BadConfig at access.
class RunConfig {
 public:
  RunConfig() = default;
  explicit RunConfig(std::map<std::string, std::string> values)
      : values_(std::move(values)) {}

  bool has(std::string_view key) const;
  std::optional<std::string> get(std::string_view key) const;
  std::optional<double> get_double(std::string_view key) const;
  std::optional<std::int64_t> get_int(std::string_view key) const;
  std::optional<std::uint64_t> get_uint(std::string_view key) const;

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

bool is_known_config_key(std::string_view key);

RunConfig parse_run_config(std::string_view text);
RunConfig load_run_config(const std::string& path);

}  // namespace adl
