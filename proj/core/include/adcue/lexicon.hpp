#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>

namespace adcue {

// 0 means "not rated" on every dimension.
struct PsycholinguisticRatings {
  int familiarity = 0;
  int concreteness = 0;
  int imagability = 0;
  int meaningfulness = 0;
  int age_of_acquisition = 0;
};

class PsycholinguisticLexicon {
 public:
  void insert(const std::string& word, const PsycholinguisticRatings& ratings);
  std::optional<PsycholinguisticRatings> find(std::string_view word) const;

  std::size_t size() const { return entries_.size(); }
  std::size_t skipped_records() const { return skipped_; }
  void set_skipped_records(std::size_t n) { skipped_ = n; }

 private:
  std::unordered_map<std::string, PsycholinguisticRatings> entries_;
  std::size_t skipped_ = 0;
};

// Reads either the MRC fixed-width dictionary or the tab-separated subset
// format.
//
// Fixed-width (1-based columns): FAM 26-28, CONC 29-31, IMAG 32-34,
// MEANC 35-37, MEANP 38-40, AOA 41-43, WORD from 52 up to the first '|' or
// space. Meaningfulness is MEANC, falling back to MEANP when MEANC is 0.
//
// Subset TSV: `word<TAB>fam<TAB>conc<TAB>imag<TAB>meaning<TAB>aoa`, with an
// optional header line starting with "word".
//
// Malformed or truncated records are skipped and counted. Repeated words
// keep the first non-zero rating per dimension. Throws Error(kMissingFile)
// when the file cannot be opened.
PsycholinguisticLexicon load_mrc(const std::filesystem::path& path);

}  // namespace adcue
