#include "adcue/corpus.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <sstream>

#include "adcue/error.hpp"
#include "text_util.hpp"

namespace adcue {

namespace {

constexpr char kBulletMark = '\x15';
constexpr std::array<std::string_view, 4> kFillers = {"uh", "um", "er", "ah"};

bool is_filler(std::string_view w) {
  return std::find(kFillers.begin(), kFillers.end(), w) != kFillers.end();
}

std::optional<std::int64_t> parse_ms(std::string_view s) {
  if (!detail::all_digits(s)) return std::nullopt;
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

struct Bullet {
  bool present = false;
  std::optional<std::int64_t> start;
  std::optional<std::int64_t> end;
  std::string text;
};

Bullet parse_bullet_text(std::string_view text) {
  Bullet b;
  b.present = true;
  b.text = std::string(text);
  auto us = text.find('_');
  if (us != std::string_view::npos) {
    b.start = parse_ms(text.substr(0, us));
    b.end = parse_ms(text.substr(us + 1));
  }
  if (!b.start || !b.end) {
    b.start.reset();
    b.end.reset();
  }
  return b;
}

// Removes a time bullet from `content` and returns it.
Bullet extract_bullet(std::string& content) {
  auto open = content.find(kBulletMark);
  if (open != std::string::npos) {
    auto close = content.find(kBulletMark, open + 1);
    std::string inner = content.substr(open + 1, close == std::string::npos
                                                     ? std::string::npos
                                                     : close - open - 1);
    content.erase(open, close == std::string::npos ? std::string::npos : close - open + 1);
    content = detail::trim(content);
    return parse_bullet_text(detail::trim(inner));
  }
  auto last_space = content.find_last_of(" \t");
  std::string_view last = last_space == std::string::npos
                              ? std::string_view(content)
                              : std::string_view(content).substr(last_space + 1);
  if (!last.empty() && detail::is_digit(last.front()) &&
      last.find('_') != std::string_view::npos) {
    Bullet b = parse_bullet_text(last);
    content = detail::trim(last_space == std::string::npos ? std::string()
                                                          : content.substr(0, last_space));
    return b;
  }
  return {};
}

void finish_main_line(Transcript& t, std::string speaker, std::string content, int line_no) {
  Utterance u;
  u.speaker = std::move(speaker);
  Bullet b = extract_bullet(content);
  if (b.present) {
    if (b.start && b.end && *b.start <= *b.end) {
      u.start_ms = b.start;
      u.end_ms = b.end;
    } else {
      t.warnings.push_back("line " + std::to_string(line_no) + ": unusable time bullet '" +
                           b.text + "'");
    }
  }
  u.raw_text = std::move(content);
  t.utterances.push_back(std::move(u));
}

bool is_terminator(std::string_view tok) {
  if (tok == "." || tok == "?" || tok == "!") return true;
  if (tok.size() >= 2 && tok.front() == '+') {
    char last = tok.back();
    return last == '.' || last == '?' || last == '!';
  }
  return false;
}

bool is_pause_mark(std::string_view tok) {
  if (tok.size() < 3 || tok.front() != '(' || tok.back() != ')') return false;
  auto inner = tok.substr(1, tok.size() - 2);
  return std::all_of(inner.begin(), inner.end(),
                     [](char c) { return c == '.' || c == ':' || detail::is_digit(c); });
}

std::string strip_at_suffix(std::string_view tok) {
  auto at = tok.find('@');
  return std::string(at == std::string_view::npos ? tok : tok.substr(0, at));
}

// Incrementally builds a TokenSequence, closing sentences on demand.
class SequenceBuilder {
 public:
  void push(std::string word) { seq_.tokens.push_back(std::move(word)); }

  void close_sentence() {
    if (seq_.tokens.size() > open_) {
      seq_.sentence_bounds.push_back({open_, seq_.tokens.size()});
      open_ = seq_.tokens.size();
    }
  }

  TokenSequence finish() {
    close_sentence();
    return std::move(seq_);
  }

 private:
  TokenSequence seq_;
  std::size_t open_ = 0;
};

std::string remove_bracket_groups(std::string_view text, Diagnostics* diag) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '[') {
      auto close = text.find(']', i);
      if (close == std::string_view::npos) break;
      auto group = text.substr(i, close - i + 1);
      if (diag) diag->note(group == "[/]" || group == "[//]" ? "retrace-marker" : "bracket-comment");
      out.push_back(' ');
      i = close + 1;
      continue;
    }
    if (text[i] == '<' || text[i] == '>') {
      out.push_back(' ');
    } else {
      out.push_back(text[i]);
    }
    ++i;
  }
  return out;
}

void normalize_into(std::string_view raw, SequenceBuilder& builder, Diagnostics* diag) {
  auto note = [&](const char* key) {
    if (diag) diag->note(key);
  };
  const std::string text = remove_bracket_groups(raw, diag);
  for (const auto& tok : detail::split_ws(text)) {
    if (is_terminator(tok)) {
      builder.close_sentence();
      continue;
    }
    if (tok.front() == '+') {
      note("chat-linker");
      continue;
    }
    if (is_pause_mark(tok)) {
      note("pause-mark");
      continue;
    }
    if (tok.front() == '&') {
      std::string base = detail::to_lower(strip_at_suffix(tok.substr(tok.size() > 1 && tok[1] == '-' ? 2 : 1)));
      while (!base.empty() && !detail::is_alpha(base.back())) base.pop_back();
      if (is_filler(base)) {
        builder.push(base);
      } else {
        note("fragment");
      }
      continue;
    }
    if (tok.size() > 1 && tok.front() == '0' && detail::is_alpha(tok[1])) {
      note("omitted-word");
      continue;
    }
    std::string word = detail::to_lower(strip_at_suffix(tok));
    if (word == "xxx" || word == "yyy" || word == "www") {
      note("unintelligible");
      continue;
    }
    bool ends_sentence = false;
    while (!word.empty() && (word.back() == '.' || word.back() == '?' || word.back() == '!')) {
      ends_sentence = true;
      word.pop_back();
    }
    // Compounds (ice+cream, ice_cream) are spoken as separate words.
    std::replace(word.begin(), word.end(), '+', ' ');
    std::replace(word.begin(), word.end(), '_', ' ');
    bool produced = false;
    for (const auto& piece : detail::split_ws(word)) {
      std::string clean;
      for (char c : piece) {
        if (detail::is_alpha(c) || detail::is_digit(c) || c == '\'') clean.push_back(c);
      }
      while (!clean.empty() && clean.front() == '\'') clean.erase(clean.begin());
      while (!clean.empty() && clean.back() == '\'') clean.pop_back();
      if (clean.empty()) continue;
      builder.push(std::move(clean));
      produced = true;
    }
    if (!produced && !(tok == "," || tok == ";" || tok == ":" || tok == "\"")) {
      note("unknown-chat-code");
    }
    if (ends_sentence) builder.close_sentence();
  }
  builder.close_sentence();
}

}  // namespace

Transcript parse_chat(std::string_view raw, std::string sample_id) {
  Transcript t;
  t.sample_id = std::move(sample_id);

  std::string pending_speaker;
  std::string pending_content;
  int pending_line = 0;
  bool in_main = false;

  auto flush = [&] {
    if (in_main) finish_main_line(t, std::move(pending_speaker), detail::trim(pending_content), pending_line);
    in_main = false;
    pending_speaker.clear();
    pending_content.clear();
  };

  std::istringstream in{std::string(raw)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const char lead = line.front();
    if (lead == '\t' || lead == ' ') {
      if (in_main) pending_content += " " + detail::trim(line);
      continue;
    }
    if (lead == '*') {
      flush();
      auto colon = line.find(':');
      if (colon == std::string::npos) {
        throw Error(ErrorKind::kParse,
                    "line " + std::to_string(line_no) + ": main line has no ':' after speaker code");
      }
      pending_speaker = detail::trim(std::string_view(line).substr(1, colon - 1));
      if (pending_speaker.empty()) {
        throw Error(ErrorKind::kParse, "line " + std::to_string(line_no) + ": empty speaker code");
      }
      pending_content = line.substr(colon + 1);
      pending_line = line_no;
      in_main = true;
      continue;
    }
    flush();
    if (lead != '%' && lead != '@') {
      t.warnings.push_back("line " + std::to_string(line_no) + ": unrecognized line ignored");
    }
  }
  flush();
  return t;
}

std::string serialize_main_lines(const Transcript& transcript) {
  std::string out;
  for (const auto& u : transcript.utterances) {
    out += "*" + u.speaker + ":\t" + u.raw_text;
    if (u.start_ms && u.end_ms) {
      out += " " + std::to_string(*u.start_ms) + "_" + std::to_string(*u.end_ms);
    }
    out += "\n";
  }
  return out;
}

TokenSequence normalize_tokens(const Transcript& transcript, std::string_view speaker,
                               Diagnostics* diag) {
  SequenceBuilder builder;
  for (const auto& u : transcript.utterances) {
    if (u.speaker != speaker) continue;
    normalize_into(u.raw_text, builder, diag);
  }
  return builder.finish();
}

TokenSequence normalize_text(std::string_view text, Diagnostics* diag) {
  SequenceBuilder builder;
  normalize_into(text, builder, diag);
  return builder.finish();
}

TokenSequence concat_subject_transcript(std::span<const TokenSequence> parts) {
  if (parts.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "concat_subject_transcript: no parts given");
  }
  TokenSequence out;
  for (const auto& part : parts) {
    const std::size_t offset = out.tokens.size();
    out.tokens.insert(out.tokens.end(), part.tokens.begin(), part.tokens.end());
    for (const auto& span : part.sentence_bounds) {
      out.sentence_bounds.push_back({span.begin + offset, span.end + offset});
    }
  }
  return out;
}

}  // namespace adcue
