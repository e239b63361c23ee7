#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace adcue {

// Coarse classes feeding the part-of-speech ratios. Articles (a, an, the)
// are ART; other determiners are DET. Possessive determiners (my, his, ...)
// are PRON, following the Universal Dependencies convention.
enum class PosTag { kPron, kVerb, kNoun, kAdj, kAdv, kConj, kArt, kDet, kPrep, kOther };

std::string_view to_string(PosTag tag);

// Maps a coarse, Universal Dependencies or Penn Treebank tag to PosTag.
// Articles tagged DET/DT are promoted to ART when `word` is a, an or the.
PosTag map_external_tag(std::string_view tag, std::string_view word = {});

class PosTagger {
 public:
  virtual ~PosTagger() = default;
  virtual std::vector<PosTag> tag(std::span<const std::string> tokens) const = 0;
};

// Deterministic lexicon lookup with suffix fallbacks. The lexicon is a TSV of
// `word<TAB>TAG` lines (TAG in the coarse vocabulary).
class RuleTagger final : public PosTagger {
 public:
  RuleTagger();  // bundled assets/pos_lexicon.tsv
  explicit RuleTagger(const std::filesystem::path& lexicon_path);

  std::vector<PosTag> tag(std::span<const std::string> tokens) const override;
  PosTag tag_word(std::string_view word) const;

 private:
  std::unordered_map<std::string, PosTag> lexicon_;
};

// Replays tags produced by an external tagger. The TSV holds
// `sample_id<TAB>token<TAB>tag` lines in token order; tag() throws when the
// requested tokens differ from the stored ones.
class PretaggedTagger final : public PosTagger {
 public:
  explicit PretaggedTagger(const std::filesystem::path& tsv_path);

  // Selects which sample subsequent tag() calls replay.
  PretaggedTagger& select(const std::string& sample_id);
  bool contains(const std::string& sample_id) const { return samples_.count(sample_id) > 0; }

  std::vector<PosTag> tag(std::span<const std::string> tokens) const override;

 private:
  struct Sequence {
    std::vector<std::string> tokens;
    std::vector<PosTag> tags;
  };
  std::map<std::string, Sequence> samples_;
  std::string selected_;
};

}  // namespace adcue
