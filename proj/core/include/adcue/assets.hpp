#pragma once

#include <filesystem>
#include <string>
#include <unordered_set>

namespace adcue {

// Directory holding the bundled word lists and lexicon samples. Resolution
// order: $ADCUE_ASSET_DIR, the installed share/adcue/assets, the source tree.
std::filesystem::path asset_dir();

// One word per line; blank lines and lines starting with '#' are skipped.
// Words are lowercased.
std::unordered_set<std::string> load_word_list(const std::filesystem::path& path);

const std::unordered_set<std::string>& bundled_stopwords();
const std::unordered_set<std::string>& bundled_familiar_words();

std::string version_string();

}  // namespace adcue
