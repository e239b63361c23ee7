#include "adcue/lexicon.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <vector>

#include "adcue/error.hpp"
#include "text_util.hpp"

namespace adcue {

void PsycholinguisticLexicon::insert(const std::string& word, const PsycholinguisticRatings& r) {
  auto [it, inserted] = entries_.emplace(word, r);
  if (inserted) return;
  auto& have = it->second;
  auto fill = [](int& dst, int src) {
    if (dst == 0) dst = src;
  };
  fill(have.familiarity, r.familiarity);
  fill(have.concreteness, r.concreteness);
  fill(have.imagability, r.imagability);
  fill(have.meaningfulness, r.meaningfulness);
  fill(have.age_of_acquisition, r.age_of_acquisition);
}

std::optional<PsycholinguisticRatings> PsycholinguisticLexicon::find(std::string_view word) const {
  auto it = entries_.find(std::string(word));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

namespace {

// Blank fields are 0 (unrated); anything else must be a non-negative integer.
std::optional<int> parse_rating(std::string_view field) {
  const std::string s = detail::trim(field);
  if (s.empty()) return 0;
  if (!detail::all_digits(s)) return std::nullopt;
  int v = 0;
  std::from_chars(s.data(), s.data() + s.size(), v);
  return v;
}

// 1-based inclusive column range.
std::string_view columns(std::string_view line, std::size_t first, std::size_t last) {
  return line.substr(first - 1, last - first + 1);
}

std::optional<std::pair<std::string, PsycholinguisticRatings>> parse_fixed_width(
    std::string_view line) {
  constexpr std::size_t kWordColumn = 52;
  if (line.size() < kWordColumn) return std::nullopt;
  auto fam = parse_rating(columns(line, 26, 28));
  auto conc = parse_rating(columns(line, 29, 31));
  auto imag = parse_rating(columns(line, 32, 34));
  auto meanc = parse_rating(columns(line, 35, 37));
  auto meanp = parse_rating(columns(line, 38, 40));
  auto aoa = parse_rating(columns(line, 41, 43));
  if (!fam || !conc || !imag || !meanc || !meanp || !aoa) return std::nullopt;
  std::string_view rest = line.substr(kWordColumn - 1);
  auto stop = rest.find_first_of("| \t");
  std::string word = detail::to_lower(rest.substr(0, stop));
  if (word.empty()) return std::nullopt;
  PsycholinguisticRatings r{*fam, *conc, *imag, *meanc != 0 ? *meanc : *meanp, *aoa};
  return std::make_pair(std::move(word), r);
}

std::optional<std::pair<std::string, PsycholinguisticRatings>> parse_tsv(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    auto tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab == std::string_view::npos ? std::string_view::npos
                                                                       : tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  if (fields.size() != 6) return std::nullopt;
  std::string word = detail::to_lower(detail::trim(fields[0]));
  if (word.empty()) return std::nullopt;
  std::array<int, 5> v{};
  for (std::size_t i = 0; i < 5; ++i) {
    auto r = parse_rating(fields[i + 1]);
    if (!r) return std::nullopt;
    v[i] = *r;
  }
  return std::make_pair(std::move(word), PsycholinguisticRatings{v[0], v[1], v[2], v[3], v[4]});
}

}  // namespace

PsycholinguisticLexicon load_mrc(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kMissingFile, "cannot open MRC lexicon " + path.string());
  PsycholinguisticLexicon lex;
  std::size_t skipped = 0;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const bool tsv = line.find('\t') != std::string::npos;
    if (tsv && first && detail::to_lower(line).starts_with("word")) {
      first = false;
      continue;
    }
    first = false;
    auto parsed = tsv ? parse_tsv(line) : parse_fixed_width(line);
    if (!parsed) {
      ++skipped;
      continue;
    }
    lex.insert(parsed->first, parsed->second);
  }
  lex.set_skipped_records(skipped);
  return lex;
}

}  // namespace adcue
