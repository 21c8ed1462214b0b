#include "adl/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "adl/error.hpp"
#include "adl/stats.hpp"
#include "adl/textio.hpp"

namespace adl {

const std::string_view kFeatureTableHeader =
    "d1,d2,d3,d4,d5,pk_avg,pk_std,pk_var,pk_med,raw_std,raw_avg,raw_max,"
    "raw_min,raw_var,raw_med,label";

namespace {

std::vector<std::string_view> split_fields(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  for (;;) {
    const std::size_t next = line.find(sep, pos);
    if (next == std::string_view::npos) {
      out.push_back(line.substr(pos));
      return out;
    }
    out.push_back(line.substr(pos, next - pos));
    pos = next + 1;
  }
}

struct LineCursor {
  std::string_view text;
  std::size_t pos = 0;
  long line_no = 0;

  bool next(std::string_view& line) {
    if (pos > text.size()) return false;
    if (pos == text.size()) {
      // A trailing newline does not start another line.
      pos = text.size() + 1;
      return false;
    }
    const std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) {
      line = text.substr(pos);
      pos = text.size() + 1;
    } else {
      line = text.substr(pos, eol - pos);
      pos = eol + 1;
    }
    ++line_no;
    return true;
  }
};

std::string read_all(std::istream& in) {
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

Capture parse_capture(std::string_view text) {
  LineCursor cursor{text};
  std::string_view line;

  if (!cursor.next(line))
    throw Error(Errc::MissingHeader, "empty input", 1);
  line = trim(line);
  constexpr std::string_view kPrefix = "# adl=";
  if (!line.starts_with(kPrefix))
    throw Error(Errc::MissingHeader,
                "first line must be `# adl=<name> rate_hz=<number>`", 1);
  std::string_view rest = line.substr(kPrefix.size());
  const std::size_t space = rest.find(' ');
  if (space == std::string_view::npos)
    throw Error(Errc::MissingHeader, "header lacks rate_hz field", 1);
  const std::string_view name = rest.substr(0, space);
  std::string_view rate_part = trim(rest.substr(space + 1));
  constexpr std::string_view kRateKey = "rate_hz=";
  if (!rate_part.starts_with(kRateKey))
    throw Error(Errc::MissingHeader, "header lacks rate_hz field", 1);

  const auto label = label_from_name(name);
  if (!label)
    throw Error(Errc::UnknownLabel, "no such activity: " + std::string(name), 1);
  const auto rate = parse_double(rate_part.substr(kRateKey.size()));
  if (!rate || !(*rate > 0.0))
    throw Error(Errc::MissingHeader, "rate_hz must be a positive number", 1);

  Capture c;
  c.label = *label;
  c.rate_hz = *rate;

  while (cursor.next(line)) {
    line = trim(line);
    if (line.empty()) continue;
    const auto fields = split_fields(line, ',');
    if (fields.size() != 4)
      throw Error(Errc::MalformedLine,
                  "expected 4 fields t_ms,x,y,z, got " +
                      std::to_string(fields.size()),
                  cursor.line_no);
    double parsed[4];
    for (int i = 0; i < 4; ++i) {
      const auto v = parse_double(trim(fields[std::size_t(i)]));
      if (!v)
        throw Error(Errc::MalformedLine,
                    "field " + std::to_string(i + 1) + " is not a number: " +
                        std::string(trim(fields[std::size_t(i)])),
                    cursor.line_no);
      parsed[i] = *v;
    }
    if (parsed[0] < 0.0)
      throw Error(Errc::MalformedLine, "t_ms must be >= 0", cursor.line_no);
    if (!c.samples.empty() && parsed[0] <= c.samples.back().t_ms)
      throw Error(Errc::NonMonotonicTimestamp,
                  "t_ms " + format_double(parsed[0]) + " after " +
                      format_double(c.samples.back().t_ms),
                  cursor.line_no);
    c.samples.push_back({parsed[0], parsed[1], parsed[2], parsed[3]});
  }

  if (c.samples.size() < 2)
    throw Error(Errc::MalformedLine, "capture needs at least 2 samples",
                cursor.line_no + 1);
  return c;
}

Capture parse_capture(std::istream& in) {
  return parse_capture(std::string_view(read_all(in)));
}

std::string serialize_capture(const Capture& c) {
  std::string out = "# adl=";
  out += label_name(c.label);
  out += " rate_hz=";
  out += format_double(c.rate_hz);
  out += '\n';
  for (const Sample& s : c.samples) {
    out += format_double(s.t_ms);
    out += ',';
    out += format_double(s.x);
    out += ',';
    out += format_double(s.y);
    out += ',';
    out += format_double(s.z);
    out += '\n';
  }
  return out;
}

const Capture& validate_capture(const Capture& c) {
  if (c.samples.size() < 2)
    throw Error(Errc::DurationOutOfRange, "capture has fewer than 2 samples");
  const double duration = c.samples.back().t_ms - c.samples.front().t_ms;
  if (duration < 4500.0 || duration > 5500.0)
    throw Error(Errc::DurationOutOfRange,
                "capture spans " + format_double(duration) +
                    " ms, expected 5000 +/- 10%");
  std::vector<double> gaps;
  gaps.reserve(c.samples.size() - 1);
  for (std::size_t i = 1; i < c.samples.size(); ++i)
    gaps.push_back(c.samples[i].t_ms - c.samples[i - 1].t_ms);
  const double nominal = 1000.0 / c.rate_hz;
  const double med = stats::median(gaps);
  if (med < 0.8 * nominal || med > 1.2 * nominal)
    throw Error(Errc::IrregularSampling,
                "median sample gap " + format_double(med) +
                    " ms, expected " + format_double(nominal) + " +/- 20%");
  return c;
}

std::string write_feature_table(std::span<const FeatureVector> rows) {
  std::string out{kFeatureTableHeader};
  out += '\n';
  for (const FeatureVector& f : rows) {
    for (double v : f.values()) {
      out += format_double(v);
      out += ',';
    }
    out += label_name(f.label);
    out += '\n';
  }
  return out;
}

std::vector<FeatureVector> read_feature_table(std::string_view text) {
  LineCursor cursor{text};
  std::string_view line;
  if (!cursor.next(line) || trim(line) != kFeatureTableHeader)
    throw Error(Errc::HeaderMismatch,
                "feature table must start with the exact header", 1);

  std::vector<FeatureVector> rows;
  while (cursor.next(line)) {
    line = trim(line);
    if (line.empty()) continue;
    const auto fields = split_fields(line, ',');
    if (fields.size() != kFeatureCount + 1)
      throw Error(Errc::RowArityMismatch,
                  "expected 16 fields, got " + std::to_string(fields.size()),
                  cursor.line_no);
    std::array<double, kFeatureCount> values;
    for (int i = 0; i < kFeatureCount; ++i) {
      const auto v = parse_double(trim(fields[std::size_t(i)]));
      if (!v)
        throw Error(Errc::MalformedLine,
                    "field " + std::to_string(i + 1) + " is not a number: " +
                        std::string(trim(fields[std::size_t(i)])),
                    cursor.line_no);
      values[std::size_t(i)] = *v;
    }
    const auto label = label_from_name(trim(fields[kFeatureCount]));
    if (!label)
      throw Error(Errc::UnknownLabel,
                  "no such activity: " + std::string(trim(fields[kFeatureCount])),
                  cursor.line_no);
    rows.push_back(FeatureVector::from_values(values, *label));
  }
  return rows;
}

std::vector<FeatureVector> read_feature_table(std::istream& in) {
  return read_feature_table(std::string_view(read_all(in)));
}

Capture read_capture_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot open " + path);
  return parse_capture(in);
}

void write_capture_file(const std::string& path, const Capture& c) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::IoError, "cannot open " + path + " for writing");
  const std::string text = serialize_capture(c);
  out.write(text.data(), std::streamsize(text.size()));
  if (!out) throw Error(Errc::IoError, "failed to write " + path);
}

std::vector<FeatureVector> read_feature_table_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot open " + path);
  return read_feature_table(in);
}

void write_feature_table_file(const std::string& path,
                              std::span<const FeatureVector> rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::IoError, "cannot open " + path + " for writing");
  const std::string text = write_feature_table(rows);
  out.write(text.data(), std::streamsize(text.size()));
  if (!out) throw Error(Errc::IoError, "failed to write " + path);
}

}  // namespace adl
