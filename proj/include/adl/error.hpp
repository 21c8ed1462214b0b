#pragma once

#include <stdexcept>
#include <string>

namespace adl {

enum class Errc {
  MissingHeader,
  UnknownLabel,
  MalformedLine,
  NonMonotonicTimestamp,
  DurationOutOfRange,
  IrregularSampling,
  HeaderMismatch,
  RowArityMismatch,
  AlphaOutOfRange,
  EmptySeries,
  EmptyFitSet,
  ArityMismatch,
  InvalidSpec,
  NonFiniteLoss,
  BadMagic,
  VersionMismatch,
  TruncatedFile,
  ClassTooSmall,
  InvalidParams,
  BadConfig,
  IoError,
};

const char* errc_name(Errc kind);

/// Error kind plus a human-readable detail. `line` is the 1-based input
/// line for parse errors, 0 when no line applies. what() renders as
/// "<Kind>: [line N:] <detail>", which the CLI prefixes with "error: ".
class Error : public std::runtime_error {
public:
  Error(Errc kind, const std::string& detail, long line = 0);

  Errc kind() const { return kind_; }
  long line() const { return line_; }

private:
  Errc kind_;
  long line_;
};

}  // namespace adl
