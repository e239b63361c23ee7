#include <cctype>
#include <string>

#include "adcue/error.hpp"
#include "adcue/text_features.hpp"
#include "text_util.hpp"

namespace adcue {

namespace {

bool is_vowel(char c, std::size_t pos) {
  switch (c) {
    case 'a': case 'e': case 'i': case 'o': case 'u': return true;
    case 'y': return pos > 0;
    default: return false;
  }
}

}  // namespace

int count_syllables(std::string_view word) {
  if (word.empty()) throw Error(ErrorKind::kInvalidArgument, "count_syllables: empty word");
  std::string w;
  w.reserve(word.size());
  for (char c : word) {
    if (!detail::is_alpha(c)) {
      throw Error(ErrorKind::kInvalidArgument,
                  "count_syllables: non-alphabetic word '" + std::string(word) + "'");
    }
    w.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }

  int groups = 0;
  std::size_t last_group_start = 0;
  bool in_group = false;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const bool v = is_vowel(w[i], i);
    if (v && !in_group) {
      ++groups;
      last_group_start = i;
    }
    in_group = v;
  }

  // A final group that is exactly a lone 'e' after a consonant is silent,
  // except in consonant + "le" endings (table, little).
  const std::size_t n = w.size();
  const bool lone_final_e = n >= 2 && w[n - 1] == 'e' && last_group_start == n - 1;
  if (lone_final_e && groups > 1) {
    const bool consonant_le = n >= 3 && w[n - 2] == 'l' && !is_vowel(w[n - 3], n - 3);
    if (!consonant_le) --groups;
  }
  return groups < 1 ? 1 : groups;
}

int token_syllables(std::string_view token) {
  std::string letters;
  for (char c : token) {
    if (detail::is_alpha(c)) letters.push_back(c);
  }
  return letters.empty() ? 1 : count_syllables(letters);
}

}  // namespace adcue
