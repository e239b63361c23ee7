#include "adcue/text_features.hpp"

#include <algorithm>
#include <array>
#include <string>
#include <vector>

#include "adcue/assets.hpp"
#include "adcue/error.hpp"
#include "text_util.hpp"

namespace adcue {

const std::array<std::string_view, kTextFeatureCount>& text_feature_names() {
  static constexpr std::array<std::string_view, kTextFeatureCount> kNames = {
      "ttr",
      "msttr",
      "mattr",
      "mtld",
      "syllable_count",
      "stopword_count",
      "lexicon_count",
      "difficult_word_count",
      "avg_sentence_length",
      "content_density",
      "propositional_density",
      "filler_pause_ratio",
      "repetition_ratio",
      "pronoun_ratio",
      "verb_ratio",
      "noun_ratio",
      "adjective_ratio",
      "adverb_ratio",
      "conjunction_ratio",
      "article_ratio",
      "determiner_ratio",
      "preposition_ratio",
      "pronoun_verb_ratio",
      "pronoun_noun_ratio",
      "flesch_reading_ease",
      "flesch_kincaid_grade",
      "gunning_fog",
      "coleman_liau",
      "dale_chall",
      "automated_readability",
      "familiarity",
      "concreteness",
      "imagability",
      "meaningfulness",
      "age_of_acquisition",
  };
  return kNames;
}

bool is_familiar_word(std::string_view raw, const std::unordered_set<std::string>& familiar) {
  const std::string word = detail::to_lower(raw);
  if (familiar.count(word)) return true;
  auto stem_in = [&](std::size_t cut, std::string_view add = {}) {
    if (word.size() <= cut + 1) return false;
    std::string stem = word.substr(0, word.size() - cut);
    stem += add;
    return familiar.count(stem) > 0;
  };
  if (word.ends_with("ies") && stem_in(3, "y")) return true;
  if (word.ends_with("es") && stem_in(2)) return true;
  if (word.ends_with("s") && stem_in(1)) return true;
  if (word.ends_with("ed") && (stem_in(2) || stem_in(1))) return true;
  if (word.ends_with("ing") && (stem_in(3) || stem_in(3, "e"))) return true;
  if (word.ends_with("est") && (stem_in(3) || stem_in(2))) return true;
  if (word.ends_with("er") && (stem_in(2) || stem_in(1))) return true;
  if (word.ends_with("ly") && stem_in(2)) return true;
  if (auto apos = word.find('\''); apos != std::string::npos && apos > 0) {
    return familiar.count(word.substr(0, apos)) > 0;
  }
  return false;
}

namespace {

struct PosCounts {
  std::array<double, 10> by_tag{};

  double operator[](PosTag t) const { return by_tag[static_cast<std::size_t>(t)]; }
};

PosCounts count_tags(std::span<const PosTag> tags) {
  PosCounts c;
  for (auto t : tags) c.by_tag[static_cast<std::size_t>(t)] += 1.0;
  return c;
}

std::size_t count_sentences(std::span<const Span> bounds) {
  std::size_t n = 0;
  for (const auto& s : bounds) n += s.size() > 0 ? 1 : 0;
  return n;
}

}  // namespace

ContentComplexity content_complexity(std::span<const std::string> tokens,
                                     std::span<const Span> sentence_bounds,
                                     std::span<const PosTag> tags,
                                     const std::unordered_set<std::string>& stopwords,
                                     const std::unordered_set<std::string>& familiar,
                                     Diagnostics* diag) {
  if (tags.size() != tokens.size()) {
    throw Error(ErrorKind::kShape, "content_complexity: " + std::to_string(tags.size()) +
                                       " tags for " + std::to_string(tokens.size()) + " tokens");
  }
  ContentComplexity c;
  for (const auto& t : tokens) {
    c.syllable_count += token_syllables(t);
    const std::string lower = detail::to_lower(t);
    if (stopwords.count(lower)) c.stopword_count += 1.0;
    if (!is_familiar_word(lower, familiar)) c.difficult_word_count += 1.0;
  }
  const double n = static_cast<double>(tokens.size());
  c.lexicon_count = n;
  const std::size_t sentences = count_sentences(sentence_bounds);
  if (sentences == 0) {
    if (diag) diag->note("zero-sentences", "average sentence length uses the token count");
    c.avg_sentence_length = n;
  } else {
    c.avg_sentence_length = n / static_cast<double>(sentences);
  }
  if (n > 0) {
    const auto k = count_tags(tags);
    c.content_density =
        (k[PosTag::kNoun] + k[PosTag::kVerb] + k[PosTag::kAdj] + k[PosTag::kAdv]) / n;
    c.propositional_density = (k[PosTag::kVerb] + k[PosTag::kAdj] + k[PosTag::kAdv] +
                               k[PosTag::kPrep] + k[PosTag::kConj]) /
                              n;
  }
  return c;
}

ContentComplexity content_complexity(std::span<const std::string> tokens,
                                     std::span<const Span> sentence_bounds,
                                     std::span<const PosTag> tags, Diagnostics* diag) {
  return content_complexity(tokens, sentence_bounds, tags, bundled_stopwords(),
                            bundled_familiar_words(), diag);
}

DisfluencyRatios disfluency_ratios(std::span<const std::string> tokens) {
  DisfluencyRatios r;
  if (tokens.empty()) return r;
  const std::size_t n = tokens.size();
  std::size_t fillers = 0;
  std::vector<bool> repeated(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& t = tokens[i];
    if (t == "uh" || t == "um" || t == "er" || t == "ah") ++fillers;
    if (i >= 1 && tokens[i] == tokens[i - 1]) repeated[i] = true;
    if (i >= 3 && tokens[i - 1] == tokens[i - 3] && tokens[i] == tokens[i - 2]) {
      repeated[i - 1] = true;
      repeated[i] = true;
    }
  }
  const auto reps = static_cast<std::size_t>(std::count(repeated.begin(), repeated.end(), true));
  r.filler_pause_ratio = static_cast<double>(fillers) / static_cast<double>(n);
  r.repetition_ratio = static_cast<double>(reps) / static_cast<double>(n);
  return r;
}

std::array<double, 11> pos_ratios(std::span<const PosTag> tags, Diagnostics* diag) {
  std::array<double, 11> out{};
  if (tags.empty()) return out;
  const auto k = count_tags(tags);
  const double n = static_cast<double>(tags.size());
  out[0] = k[PosTag::kPron] / n;
  out[1] = k[PosTag::kVerb] / n;
  out[2] = k[PosTag::kNoun] / n;
  out[3] = k[PosTag::kAdj] / n;
  out[4] = k[PosTag::kAdv] / n;
  out[5] = k[PosTag::kConj] / n;
  out[6] = k[PosTag::kArt] / n;
  out[7] = (k[PosTag::kArt] + k[PosTag::kDet]) / n;
  out[8] = k[PosTag::kPrep] / n;
  if (k[PosTag::kVerb] > 0) {
    out[9] = k[PosTag::kPron] / k[PosTag::kVerb];
  } else if (diag) {
    diag->note("zero-verbs", "pronoun/verb ratio set to 0");
  }
  if (k[PosTag::kNoun] > 0) {
    out[10] = k[PosTag::kPron] / k[PosTag::kNoun];
  } else if (diag) {
    diag->note("zero-nouns", "pronoun/noun ratio set to 0");
  }
  return out;
}

Readability readability(std::span<const std::string> tokens, std::span<const Span> sentence_bounds,
                        const std::unordered_set<std::string>& familiar) {
  if (tokens.empty()) throw Error(ErrorKind::kInvalidArgument, "readability: no tokens");
  const std::size_t sentence_count = count_sentences(sentence_bounds);
  if (sentence_count == 0) throw Error(ErrorKind::kInvalidArgument, "readability: no sentences");

  double syllables = 0.0, complex_words = 0.0, letters = 0.0, chars = 0.0, difficult = 0.0;
  for (const auto& t : tokens) {
    const int syl = token_syllables(t);
    syllables += syl;
    if (syl >= 3) complex_words += 1.0;
    for (char c : t) {
      chars += 1.0;
      if (detail::is_alpha(c)) letters += 1.0;
    }
    if (!is_familiar_word(t, familiar)) difficult += 1.0;
  }
  const double words = static_cast<double>(tokens.size());
  const double sentences = static_cast<double>(sentence_count);
  const double wps = words / sentences;
  const double spw = syllables / words;

  Readability r;
  r.fre = 206.835 - 1.015 * wps - 84.6 * spw;
  r.fkgl = 0.39 * wps + 11.8 * spw - 15.59;
  r.gfi = 0.4 * (wps + 100.0 * complex_words / words);
  const double letters_per_100 = letters / words * 100.0;
  const double sentences_per_100 = sentences / words * 100.0;
  r.cli = 0.0588 * letters_per_100 - 0.296 * sentences_per_100 - 15.8;
  const double difficult_pct = difficult / words * 100.0;
  r.dcrs = 0.1579 * difficult_pct + 0.0496 * wps;
  if (difficult_pct > 5.0) r.dcrs += 3.6365;
  r.ari = 4.71 * (chars / words) + 0.5 * wps - 21.43;
  return r;
}

Readability readability(std::span<const std::string> tokens,
                        std::span<const Span> sentence_bounds) {
  return readability(tokens, sentence_bounds, bundled_familiar_words());
}

std::array<double, 5> psycholinguistic_means(std::span<const std::string> tokens,
                                             const PsycholinguisticLexicon& lexicon,
                                             Diagnostics* diag) {
  std::array<double, 5> sum{};
  std::array<int, 5> rated{};
  for (const auto& t : tokens) {
    auto r = lexicon.find(detail::to_lower(t));
    if (!r) continue;
    const std::array<int, 5> v = {r->familiarity, r->concreteness, r->imagability,
                                  r->meaningfulness, r->age_of_acquisition};
    for (std::size_t d = 0; d < 5; ++d) {
      if (v[d] > 0) {
        sum[d] += v[d];
        ++rated[d];
      }
    }
  }
  static constexpr std::array<const char*, 5> kDims = {
      "unrated-familiarity", "unrated-concreteness", "unrated-imagability",
      "unrated-meaningfulness", "unrated-age-of-acquisition"};
  std::array<double, 5> out{};
  for (std::size_t d = 0; d < 5; ++d) {
    if (rated[d] > 0) {
      out[d] = sum[d] / rated[d];
    } else if (diag) {
      diag->note(kDims[d]);
    }
  }
  return out;
}

TextFeatureVector extract_text_features(const TokenSequence& seq, const PosTagger& tagger,
                                        const PsycholinguisticLexicon& lexicon,
                                        const TextFeatureConfig& config, Diagnostics* diag) {
  if (seq.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "extract_text_features: empty token stream");
  }
  auto stage = [&](std::size_t first_index, auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      throw Error(e.kind(), "text feature " + std::to_string(first_index) + " (" +
                                std::string(text_feature_names()[first_index]) + "): " + e.what());
    }
  };

  TextFeatureVector v;
  std::span<const std::string> tokens(seq.tokens);
  std::vector<Span> bounds = seq.sentence_bounds;
  if (bounds.empty()) {
    if (diag) diag->note("zero-sentences", "treated the whole sample as one sentence");
    bounds.push_back({0, seq.size()});
  }

  stage(kTtr, [&] {
    auto ld = lexical_diversity(tokens, config.ttr_window, config.mtld_threshold);
    v[kTtr] = ld.ttr;
    v[kMsttr] = ld.msttr;
    v[kMattr] = ld.mattr;
    v[kMtld] = ld.mtld;
  });

  std::vector<PosTag> tags;
  stage(kContentDensity, [&] {
    tags = tagger.tag(tokens);
    if (tags.size() != tokens.size()) {
      throw Error(ErrorKind::kShape, "tagger returned " + std::to_string(tags.size()) +
                                         " tags for " + std::to_string(tokens.size()) + " tokens");
    }
  });

  stage(kSyllableCount, [&] {
    auto cc = content_complexity(tokens, bounds, tags, diag);
    v[kSyllableCount] = cc.syllable_count;
    v[kStopwordCount] = cc.stopword_count;
    v[kLexiconCount] = cc.lexicon_count;
    v[kDifficultWordCount] = cc.difficult_word_count;
    v[kAvgSentenceLength] = cc.avg_sentence_length;
    v[kContentDensity] = cc.content_density;
    v[kPropositionalDensity] = cc.propositional_density;
  });

  stage(kFillerPauseRatio, [&] {
    auto dr = disfluency_ratios(tokens);
    v[kFillerPauseRatio] = dr.filler_pause_ratio;
    v[kRepetitionRatio] = dr.repetition_ratio;
  });

  stage(kPronounRatio, [&] {
    auto pr = pos_ratios(tags, diag);
    for (std::size_t i = 0; i < pr.size(); ++i) v[kPronounRatio + i] = pr[i];
  });

  stage(kFleschReadingEase, [&] {
    auto rd = readability(tokens, bounds);
    v[kFleschReadingEase] = rd.fre;
    v[kFleschKincaidGrade] = rd.fkgl;
    v[kGunningFog] = rd.gfi;
    v[kColemanLiau] = rd.cli;
    v[kDaleChall] = rd.dcrs;
    v[kAutomatedReadability] = rd.ari;
  });

  stage(kFamiliarity, [&] {
    auto pm = psycholinguistic_means(tokens, lexicon, diag);
    for (std::size_t i = 0; i < pm.size(); ++i) v[kFamiliarity + i] = pm[i];
  });
  return v;
}

}  // namespace adcue
