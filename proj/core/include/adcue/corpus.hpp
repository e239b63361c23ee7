#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "adcue/diagnostics.hpp"

namespace adcue {

struct Utterance {
  std::string speaker;
  std::string raw_text;
  std::optional<std::int64_t> start_ms;
  std::optional<std::int64_t> end_ms;
};

struct Transcript {
  std::string sample_id;
  std::vector<Utterance> utterances;
  std::vector<std::string> warnings;
};

// Half-open token index range [begin, end).
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  friend bool operator==(const Span&, const Span&) = default;
};

// Lowercased spoken words with sentence ranges that partition [0, size()).
struct TokenSequence {
  std::vector<std::string> tokens;
  std::vector<Span> sentence_bounds;

  std::size_t size() const { return tokens.size(); }
  bool empty() const { return tokens.empty(); }
  friend bool operator==(const TokenSequence&, const TokenSequence&) = default;
};

// Parses CHAT-style text: one Utterance per `*SPK:` main line (tab-indented
// continuation lines are folded in), `%` tiers and `@` headers skipped.
// A trailing `start_end` time bullet, bare or wrapped in 0x15 bytes, fills
// start_ms/end_ms. Throws Error(kParse) naming the line for a main line
// without a colon or with an empty speaker code. A bad time bullet only adds
// a warning.
Transcript parse_chat(std::string_view raw, std::string sample_id = {});

// Renders main lines back as `*SPK:\ttext[ start_end]`, one per line.
std::string serialize_main_lines(const Transcript& transcript);

// Keeps utterances of `speaker` and maps CHAT markup to spoken words:
//   &-uh &-um &-er &-ah (and the older &uh form) -> filler words, kept
//   other &-fragments, xxx/yyy/www, 0-omissions, (.) pauses -> dropped
//   [/] [//] and every other [...] group -> dropped, retraced words kept
//   . ? ! and +... style terminators -> sentence boundary
// Each utterance also closes its sentence. Stripped codes are tallied in
// `diag` when given.
TokenSequence normalize_tokens(const Transcript& transcript, std::string_view speaker,
                               Diagnostics* diag = nullptr);

// Normalizes free text (an ASR hypothesis, a plain transcript) with the same
// rules as a single utterance.
TokenSequence normalize_text(std::string_view text, Diagnostics* diag = nullptr);

// Concatenates utterance-level sequences into one subject-level sequence,
// re-basing sentence bounds. Throws Error(kInvalidArgument) on an empty list.
TokenSequence concat_subject_transcript(std::span<const TokenSequence> parts);

}  // namespace adcue
