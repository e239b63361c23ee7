#include "adcue/assets.hpp"

#include <cstdlib>
#include <fstream>

#include "adcue/error.hpp"
#include "text_util.hpp"

namespace adcue {

namespace fs = std::filesystem;

fs::path asset_dir() {
  if (const char* env = std::getenv("ADCUE_ASSET_DIR"); env && *env) return fs::path(env);
  fs::path installed(ADCUE_INSTALL_ASSET_DIR);
  std::error_code ec;
  if (fs::exists(installed / "stopwords.txt", ec)) return installed;
  return fs::path(ADCUE_SOURCE_ASSET_DIR);
}

std::unordered_set<std::string> load_word_list(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kMissingFile, "cannot open word list " + path.string());
  std::unordered_set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    auto word = detail::trim(line);
    if (word.empty() || word.front() == '#') continue;
    words.insert(detail::to_lower(word));
  }
  return words;
}

const std::unordered_set<std::string>& bundled_stopwords() {
  static const auto words = load_word_list(asset_dir() / "stopwords.txt");
  return words;
}

const std::unordered_set<std::string>& bundled_familiar_words() {
  static const auto words = load_word_list(asset_dir() / "familiar_words.txt");
  return words;
}

std::string version_string() { return ADCUE_VERSION_STRING; }

}  // namespace adcue
