#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace adcue {

enum class ErrorKind {
  kParse,
  kInvalidArgument,
  kShape,
  kIo,
  kMissingFile,
  kSchema,
  kDuplicateKey,
  kPath,
  kBadMagic,
  kTruncated,
  kDimensionOverflow,
  kNumeric,
  kMissingPrerequisite,
  kNothingToInterpret,
};

std::string_view to_string(ErrorKind kind);

// All recoverable failures in the toolkit surface as adcue::Error. The kind
// lets callers (and tests) distinguish failure classes without string
// matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace adcue
