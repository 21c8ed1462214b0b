#include "adl/error.hpp"

namespace adl {
namespace {

std::string render(Errc kind, const std::string& detail, long line) {
  std::string msg = errc_name(kind);
  msg += ": ";
  if (line > 0) {
    msg += "line ";
    msg += std::to_string(line);
    msg += ": ";
  }
  msg += detail;
  return msg;
}

}  // namespace

const char* errc_name(Errc kind) {
  switch (kind) {
    case Errc::MissingHeader: return "MissingHeader";
    case Errc::UnknownLabel: return "UnknownLabel";
    case Errc::MalformedLine: return "MalformedLine";
    case Errc::NonMonotonicTimestamp: return "NonMonotonicTimestamp";
    case Errc::DurationOutOfRange: return "DurationOutOfRange";
    case Errc::IrregularSampling: return "IrregularSampling";
    case Errc::HeaderMismatch: return "HeaderMismatch";
    case Errc::RowArityMismatch: return "RowArityMismatch";
    case Errc::AlphaOutOfRange: return "AlphaOutOfRange";
    case Errc::EmptySeries: return "EmptySeries";
    case Errc::EmptyFitSet: return "EmptyFitSet";
    case Errc::ArityMismatch: return "ArityMismatch";
    case Errc::InvalidSpec: return "InvalidSpec";
    case Errc::NonFiniteLoss: return "NonFiniteLoss";
    case Errc::BadMagic: return "BadMagic";
    case Errc::VersionMismatch: return "VersionMismatch";
    case Errc::TruncatedFile: return "TruncatedFile";
    case Errc::ClassTooSmall: return "ClassTooSmall";
    case Errc::InvalidParams: return "InvalidParams";
    case Errc::BadConfig: return "BadConfig";
    case Errc::IoError: return "IoError";
  }
  return "UnknownError";
}

Error::Error(Errc kind, const std::string& detail, long line)
    : std::runtime_error(render(kind, detail, line)), kind_(kind), line_(line) {}

}  // namespace adl
