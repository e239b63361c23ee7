#include "adcue/diagnostics.hpp"

namespace adcue {

void Diagnostics::note(const std::string& key, const std::string& detail) {
  ++tally_[key];
  if (!detail.empty()) details_.push_back(key + ": " + detail);
}

void Diagnostics::merge(const Diagnostics& other) {
  for (const auto& [key, n] : other.tally_) tally_[key] += n;
  details_.insert(details_.end(), other.details_.begin(), other.details_.end());
}

int Diagnostics::count(const std::string& key) const {
  auto it = tally_.find(key);
  return it == tally_.end() ? 0 : it->second;
}

}  // namespace adcue
