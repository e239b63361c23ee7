#pragma once

#include <map>
#include <string>
#include <vector>

namespace adcue {

// Tally of non-fatal conditions raised while processing one sample: fallback
// values taken, codes stripped, lines skipped. Keys are short stable tags
// ("zero-voiced-frames", "unknown-chat-code", ...).
class Diagnostics {
 public:
  void note(const std::string& key, const std::string& detail = {});
  void merge(const Diagnostics& other);

  int count(const std::string& key) const;
  bool has(const std::string& key) const { return count(key) > 0; }
  bool empty() const { return tally_.empty(); }

  const std::map<std::string, int>& tally() const { return tally_; }
  const std::vector<std::string>& details() const { return details_; }

 private:
  std::map<std::string, int> tally_;
  std::vector<std::string> details_;
};

}  // namespace adcue
