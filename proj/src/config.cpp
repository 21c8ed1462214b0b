#include "adl/config.hpp"

#include <array>
#include <fstream>
#include <sstream>

#include "adl/error.hpp"
#include "adl/textio.hpp"

namespace adl {

bool RunConfig::has(std::string_view key) const {
  return values_.find(std::string(key)) != values_.end();
}

std::optional<std::string> RunConfig::get(std::string_view key) const {
  auto it = values_.find(std::string(key));
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::optional<double> RunConfig::get_double(std::string_view key) const {
  auto raw = get(key);
  if (!raw) return std::nullopt;
  auto parsed = parse_double(*raw);
  if (!parsed)
    throw Error(Errc::BadConfig,
                std::string(key) + " is not a number: " + *raw);
  return parsed;
}

std::optional<std::int64_t> RunConfig::get_int(std::string_view key) const {
  auto raw = get(key);
  if (!raw) return std::nullopt;
  auto parsed = parse_int(*raw);
  if (!parsed)
    throw Error(Errc::BadConfig,
                std::string(key) + " is not an integer: " + *raw);
  return std::int64_t(*parsed);
}

std::optional<std::uint64_t> RunConfig::get_uint(std::string_view key) const {
  auto raw = get(key);
  if (!raw) return std::nullopt;
  auto parsed = parse_uint(*raw);
  if (!parsed)
    throw Error(Errc::BadConfig,
                std::string(key) + " is not a non-negative integer: " + *raw);
  return std::uint64_t(*parsed);
}

bool is_known_config_key(std::string_view key) {
  static constexpr std::array<std::string_view, 27> kKeys = {
      "corpus_dir",  "features",   "model",       "out_dir",
      "alpha",       "peak_separation_ms",        "peak_floor",
      "variant",     "preset",     "norm",        "budget",
      "budgets",     "seed",       "test_fraction",
      "per_class",   "jobs",       "presets",     "variants",
      "arms",        "lr_mlp_bp",  "lr_ff_bp",    "lr_deep",
      "l2_lambda",   "mlp_hidden", "ff_hidden",   "deep_hidden",
      "trials",
  };
  for (std::string_view k : kKeys)
    if (k == key) return true;
  return false;
}

RunConfig parse_run_config(std::string_view text) {
  std::map<std::string, std::string> values;
  std::size_t pos = 0;
  long line_no = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos)
      throw Error(Errc::BadConfig, "expected key=value, got: " + std::string(line),
                  line_no);
    const std::string key{trim(line.substr(0, eq))};
    const std::string value{trim(line.substr(eq + 1))};
    if (key.empty())
      throw Error(Errc::BadConfig, "empty key", line_no);
    if (!is_known_config_key(key))
      throw Error(Errc::BadConfig, "unknown key: " + key, line_no);
    values[key] = value;  // later duplicates win
  }
  return RunConfig(std::move(values));
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_run_config(buf.str());
}

}  // namespace adl
