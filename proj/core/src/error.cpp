#include "adcue/error.hpp"

namespace adcue {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParse: return "parse";
    case ErrorKind::kInvalidArgument: return "invalid-argument";
    case ErrorKind::kShape: return "shape";
    case ErrorKind::kIo: return "io";
    case ErrorKind::kMissingFile: return "missing-file";
    case ErrorKind::kSchema: return "schema";
    case ErrorKind::kDuplicateKey: return "duplicate-key";
    case ErrorKind::kPath: return "path";
    case ErrorKind::kBadMagic: return "bad-magic";
    case ErrorKind::kTruncated: return "truncated";
    case ErrorKind::kDimensionOverflow: return "dimension-overflow";
    case ErrorKind::kNumeric: return "numeric";
    case ErrorKind::kMissingPrerequisite: return "missing-prerequisite";
    case ErrorKind::kNothingToInterpret: return "nothing-to-interpret";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message),
      kind_(kind) {}

}  // namespace adcue
