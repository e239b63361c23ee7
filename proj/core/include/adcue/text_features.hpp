#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>

#include "adcue/corpus.hpp"
#include "adcue/diagnostics.hpp"
#include "adcue/lexicon.hpp"
#include "adcue/pos_tagger.hpp"

namespace adcue {

inline constexpr std::size_t kTextFeatureCount = 35;

// Canonical column order; indices are stable across releases.
enum TextFeature : std::size_t {
  kTtr = 0,
  kMsttr,
  kMattr,
  kMtld,
  kSyllableCount,
  kStopwordCount,
  kLexiconCount,
  kDifficultWordCount,
  kAvgSentenceLength,
  kContentDensity,
  kPropositionalDensity,
  kFillerPauseRatio,
  kRepetitionRatio,
  kPronounRatio,
  kVerbRatio,
  kNounRatio,
  kAdjectiveRatio,
  kAdverbRatio,
  kConjunctionRatio,
  kArticleRatio,
  kDeterminerRatio,
  kPrepositionRatio,
  kPronounVerbRatio,
  kPronounNounRatio,
  kFleschReadingEase,
  kFleschKincaidGrade,
  kGunningFog,
  kColemanLiau,
  kDaleChall,
  kAutomatedReadability,
  kFamiliarity,
  kConcreteness,
  kImagability,
  kMeaningfulness,
  kAgeOfAcquisition,
};

const std::array<std::string_view, kTextFeatureCount>& text_feature_names();

struct TextFeatureVector {
  std::array<double, kTextFeatureCount> values{};

  double operator[](std::size_t i) const { return values[i]; }
  double& operator[](std::size_t i) { return values[i]; }
};

struct TextFeatureConfig {
  std::size_t ttr_window = 50;     // MSTTR / MATTR window
  double mtld_threshold = 0.72;
};

// Vowel groups (a e i o u y; y not word-initial), minus a lone final silent
// e, restored for consonant + "le" endings; at least 1. Throws
// Error(kInvalidArgument) for empty or non-alphabetic input.
int count_syllables(std::string_view word);

// Syllables of the alphabetic characters of a token; tokens without letters
// (numerals) count as one syllable.
int token_syllables(std::string_view token);

struct LexicalDiversity {
  double ttr = 0.0;
  double msttr = 0.0;
  double mattr = 0.0;
  double mtld = 0.0;
};

// TTR, mean segmental TTR over disjoint windows (partial tail dropped; fewer
// tokens than one window -> TTR), moving-average TTR (fewer tokens than one
// window -> TTR) and bidirectional MTLD. When a pass never drops to the
// threshold its factor count is 0; MTLD then falls back to
// |tokens| / (1 - threshold) for that pass. Throws on empty input.
LexicalDiversity lexical_diversity(std::span<const std::string> tokens,
                                   std::size_t window = 50, double mtld_threshold = 0.72);

double mtld(std::span<const std::string> tokens, double threshold = 0.72);

struct ContentComplexity {
  double syllable_count = 0.0;
  double stopword_count = 0.0;
  double lexicon_count = 0.0;
  double difficult_word_count = 0.0;
  double avg_sentence_length = 0.0;
  double content_density = 0.0;
  double propositional_density = 0.0;
};

// Words matched after stripping common inflections (-s, -es, -ies, -ed,
// -ing, -er, -est, -ly).
bool is_familiar_word(std::string_view word, const std::unordered_set<std::string>& familiar);

ContentComplexity content_complexity(std::span<const std::string> tokens,
                                     std::span<const Span> sentence_bounds,
                                     std::span<const PosTag> tags,
                                     const std::unordered_set<std::string>& stopwords,
                                     const std::unordered_set<std::string>& familiar,
                                     Diagnostics* diag = nullptr);

// Uses the bundled stop-word and familiar-word lists.
ContentComplexity content_complexity(std::span<const std::string> tokens,
                                     std::span<const Span> sentence_bounds,
                                     std::span<const PosTag> tags, Diagnostics* diag = nullptr);

struct DisfluencyRatios {
  double filler_pause_ratio = 0.0;
  double repetition_ratio = 0.0;
};

// Repetitions: tokens equal to their predecessor plus both tokens of a
// bigram that repeats the bigram right before it. Each token counts once.
DisfluencyRatios disfluency_ratios(std::span<const std::string> tokens);

// Indices 13-23 in order: nine class ratios, then PRON/VERB and PRON/NOUN.
// The determiner ratio counts ART and DET. Zero denominators give 0 and a
// diagnostic.
std::array<double, 11> pos_ratios(std::span<const PosTag> tags, Diagnostics* diag = nullptr);

struct Readability {
  double fre = 0.0;
  double fkgl = 0.0;
  double gfi = 0.0;
  double cli = 0.0;
  double dcrs = 0.0;
  double ari = 0.0;
};

// Closed-form indices over word, sentence, syllable, letter and character
// counts. Letters are alphabetic characters; characters are all token
// characters. Complex words have at least three syllables; difficult words
// are those failing is_familiar_word. Throws Error(kInvalidArgument) with no
// tokens or no sentences.
Readability readability(std::span<const std::string> tokens, std::span<const Span> sentence_bounds,
                        const std::unordered_set<std::string>& familiar);
Readability readability(std::span<const std::string> tokens, std::span<const Span> sentence_bounds);

// Means over tokens with a non-zero rating, per dimension; dimensions with no
// rated token are 0 (diagnostic "unrated-<dimension>").
std::array<double, 5> psycholinguistic_means(std::span<const std::string> tokens,
                                             const PsycholinguisticLexicon& lexicon,
                                             Diagnostics* diag = nullptr);

// Assembles all 35 features. Throws Error(kInvalidArgument) for an empty
// token stream; component failures are rethrown with the feature index.
TextFeatureVector extract_text_features(const TokenSequence& seq, const PosTagger& tagger,
                                        const PsycholinguisticLexicon& lexicon,
                                        const TextFeatureConfig& config = {},
                                        Diagnostics* diag = nullptr);

}  // namespace adcue
