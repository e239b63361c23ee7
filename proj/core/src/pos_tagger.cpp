#include "adcue/pos_tagger.hpp"

#include <array>
#include <fstream>

#include "adcue/assets.hpp"
#include "adcue/error.hpp"
#include "text_util.hpp"

namespace adcue {

namespace fs = std::filesystem;

std::string_view to_string(PosTag tag) {
  switch (tag) {
    case PosTag::kPron: return "PRON";
    case PosTag::kVerb: return "VERB";
    case PosTag::kNoun: return "NOUN";
    case PosTag::kAdj: return "ADJ";
    case PosTag::kAdv: return "ADV";
    case PosTag::kConj: return "CONJ";
    case PosTag::kArt: return "ART";
    case PosTag::kDet: return "DET";
    case PosTag::kPrep: return "PREP";
    case PosTag::kOther: return "OTHER";
  }
  return "OTHER";
}

PosTag map_external_tag(std::string_view tag, std::string_view word) {
  const bool article = word == "a" || word == "an" || word == "the";
  // Coarse vocabulary and Universal Dependencies.
  if (tag == "PRON") return PosTag::kPron;
  if (tag == "VERB" || tag == "AUX") return PosTag::kVerb;
  if (tag == "NOUN" || tag == "PROPN") return PosTag::kNoun;
  if (tag == "ADJ") return PosTag::kAdj;
  if (tag == "ADV") return PosTag::kAdv;
  if (tag == "CONJ" || tag == "CCONJ" || tag == "SCONJ") return PosTag::kConj;
  if (tag == "ART") return PosTag::kArt;
  if (tag == "DET") return article ? PosTag::kArt : PosTag::kDet;
  if (tag == "PREP" || tag == "ADP") return PosTag::kPrep;
  // Penn Treebank.
  if (tag == "PRP" || tag == "PRP$" || tag == "WP" || tag == "WP$" || tag == "EX") return PosTag::kPron;
  if (tag.starts_with("VB") || tag == "MD") return PosTag::kVerb;
  if (tag.starts_with("NN")) return PosTag::kNoun;
  if (tag.starts_with("JJ")) return PosTag::kAdj;
  if (tag.starts_with("RB") || tag == "WRB") return PosTag::kAdv;
  if (tag == "CC") return PosTag::kConj;
  if (tag == "DT" || tag == "PDT" || tag == "WDT") return article ? PosTag::kArt : PosTag::kDet;
  if (tag == "IN" || tag == "TO") return PosTag::kPrep;
  return PosTag::kOther;
}

RuleTagger::RuleTagger() : RuleTagger(asset_dir() / "pos_lexicon.tsv") {}

RuleTagger::RuleTagger(const fs::path& lexicon_path) {
  std::ifstream in(lexicon_path);
  if (!in) throw Error(ErrorKind::kMissingFile, "cannot open POS lexicon " + lexicon_path.string());
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) continue;
    auto word = detail::to_lower(detail::trim(line.substr(0, tab)));
    auto tag = detail::trim(line.substr(tab + 1));
    lexicon_.emplace(word, map_external_tag(tag, word));
  }
}

PosTag RuleTagger::tag_word(std::string_view raw) const {
  const std::string word = detail::to_lower(raw);
  if (auto it = lexicon_.find(word); it != lexicon_.end()) return it->second;
  if (word.empty() || detail::is_digit(word.front())) return PosTag::kOther;

  // Clitics: boy's -> boy, kids' -> kids.
  if (auto apos = word.find('\''); apos != std::string::npos && apos > 0) {
    return tag_word(std::string_view(word).substr(0, apos));
  }

  auto ends = [&](std::string_view suffix, std::size_t min_len) {
    return word.size() >= min_len && word.ends_with(suffix);
  };
  // Plural or third-person -s on a known stem.
  if (ends("s", 4) && !ends("ss", 3)) {
    if (auto it = lexicon_.find(word.substr(0, word.size() - 1)); it != lexicon_.end()) {
      if (it->second == PosTag::kVerb || it->second == PosTag::kNoun) return it->second;
    }
  }
  if (ends("ly", 4)) return PosTag::kAdv;
  if (ends("ing", 5) || ends("ed", 4)) return PosTag::kVerb;
  static constexpr std::array<std::string_view, 8> kNounSuffixes = {
      "tion", "sion", "ment", "ness", "ity", "ship", "ism", "ance"};
  for (auto s : kNounSuffixes) {
    if (ends(s, s.size() + 2)) return PosTag::kNoun;
  }
  static constexpr std::array<std::string_view, 9> kAdjSuffixes = {
      "ful", "ous", "ive", "able", "ible", "less", "ish", "ical", "ary"};
  for (auto s : kAdjSuffixes) {
    if (ends(s, s.size() + 2)) return PosTag::kAdj;
  }
  if (ends("ize", 5) || ends("ise", 5) || ends("ify", 5)) return PosTag::kVerb;
  return PosTag::kNoun;
}

std::vector<PosTag> RuleTagger::tag(std::span<const std::string> tokens) const {
  std::vector<PosTag> tags;
  tags.reserve(tokens.size());
  for (const auto& t : tokens) tags.push_back(tag_word(t));
  return tags;
}

PretaggedTagger::PretaggedTagger(const fs::path& tsv_path) {
  std::ifstream in(tsv_path);
  if (!in) throw Error(ErrorKind::kMissingFile, "cannot open pre-tagged TSV " + tsv_path.string());
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    auto t1 = line.find('\t');
    auto t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string::npos) {
      throw Error(ErrorKind::kParse, tsv_path.string() + ":" + std::to_string(line_no) +
                                         ": expected sample_id<TAB>token<TAB>tag");
    }
    auto& seq = samples_[line.substr(0, t1)];
    auto token = detail::to_lower(line.substr(t1 + 1, t2 - t1 - 1));
    seq.tags.push_back(map_external_tag(detail::trim(line.substr(t2 + 1)), token));
    seq.tokens.push_back(std::move(token));
  }
}

PretaggedTagger& PretaggedTagger::select(const std::string& sample_id) {
  if (!contains(sample_id)) {
    throw Error(ErrorKind::kInvalidArgument, "no pre-tagged tokens for sample '" + sample_id + "'");
  }
  selected_ = sample_id;
  return *this;
}

std::vector<PosTag> PretaggedTagger::tag(std::span<const std::string> tokens) const {
  auto it = samples_.find(selected_);
  if (it == samples_.end()) {
    throw Error(ErrorKind::kInvalidArgument, "PretaggedTagger: no sample selected");
  }
  const auto& seq = it->second;
  if (seq.tokens.size() != tokens.size() ||
      !std::equal(seq.tokens.begin(), seq.tokens.end(), tokens.begin())) {
    throw Error(ErrorKind::kInvalidArgument,
                "PretaggedTagger: tokens of sample '" + selected_ + "' differ from the tagged ones");
  }
  return seq.tags;
}

}  // namespace adcue
