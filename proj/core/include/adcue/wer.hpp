#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace adcue {

struct WerBreakdown {
  std::size_t substitutions = 0;
  std::size_t deletions = 0;
  std::size_t insertions = 0;
  std::size_t ref_len = 0;
  double wer = 0.0;

  std::size_t edits() const { return substitutions + deletions + insertions; }
};

// Minimal Levenshtein alignment with unit costs; among minimal alignments
// the backtrace prefers substitution, then deletion, then insertion.
// Throws Error(kInvalidArgument) for an empty reference.
WerBreakdown wer(std::span<const std::string> ref, std::span<const std::string> hyp);

// Normalizes both strings with normalize_text first.
WerBreakdown wer(std::string_view ref_text, std::string_view hyp_text);

// Mean of per-sample WER.
double mean_wer(std::span<const WerBreakdown> pairs);

// Total edits over total reference words.
double pooled_wer(std::span<const WerBreakdown> pairs);

}  // namespace adcue
