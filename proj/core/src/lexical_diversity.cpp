#include <unordered_map>
#include <unordered_set>

#include "adcue/error.hpp"
#include "adcue/text_features.hpp"

namespace adcue {

namespace {

double type_token_ratio(std::span<const std::string> tokens) {
  std::unordered_set<std::string_view> types(tokens.begin(), tokens.end());
  return static_cast<double>(types.size()) / static_cast<double>(tokens.size());
}

// Sliding window TTR kept incrementally with per-type counts.
double moving_average_ttr(std::span<const std::string> tokens, std::size_t window) {
  std::unordered_map<std::string_view, int> counts;
  std::size_t distinct = 0;
  for (std::size_t i = 0; i < window; ++i) {
    if (counts[tokens[i]]++ == 0) ++distinct;
  }
  double sum = static_cast<double>(distinct) / static_cast<double>(window);
  std::size_t windows = 1;
  for (std::size_t i = window; i < tokens.size(); ++i) {
    if (--counts[tokens[i - window]] == 0) --distinct;
    if (counts[tokens[i]]++ == 0) ++distinct;
    sum += static_cast<double>(distinct) / static_cast<double>(window);
    ++windows;
  }
  return sum / static_cast<double>(windows);
}

template <typename It>
double mtld_pass(It first, It last, double threshold) {
  std::unordered_set<std::string_view> types;
  std::size_t token_count = 0;
  double factors = 0.0;
  double current_ttr = 1.0;
  std::size_t total = 0;
  for (It it = first; it != last; ++it) {
    ++total;
    ++token_count;
    types.insert(*it);
    current_ttr = static_cast<double>(types.size()) / static_cast<double>(token_count);
    if (current_ttr <= threshold) {
      factors += 1.0;
      token_count = 0;
      types.clear();
      current_ttr = 1.0;
    }
  }
  factors += (1.0 - current_ttr) / (1.0 - threshold);
  if (factors == 0.0) return static_cast<double>(total) / (1.0 - threshold);
  return static_cast<double>(total) / factors;
}

}  // namespace

double mtld(std::span<const std::string> tokens, double threshold) {
  if (tokens.empty()) throw Error(ErrorKind::kInvalidArgument, "mtld: empty token sequence");
  const double forward = mtld_pass(tokens.begin(), tokens.end(), threshold);
  const double backward = mtld_pass(tokens.rbegin(), tokens.rend(), threshold);
  return (forward + backward) / 2.0;
}

LexicalDiversity lexical_diversity(std::span<const std::string> tokens, std::size_t window,
                                   double mtld_threshold) {
  if (tokens.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "lexical_diversity: empty token sequence");
  }
  if (window == 0) throw Error(ErrorKind::kInvalidArgument, "lexical_diversity: window must be > 0");
  LexicalDiversity out;
  out.ttr = type_token_ratio(tokens);

  const std::size_t segments = tokens.size() / window;
  if (segments == 0) {
    out.msttr = out.ttr;
    out.mattr = out.ttr;
  } else {
    double sum = 0.0;
    for (std::size_t s = 0; s < segments; ++s) {
      sum += type_token_ratio(tokens.subspan(s * window, window));
    }
    out.msttr = sum / static_cast<double>(segments);
    out.mattr = moving_average_ttr(tokens, window);
  }
  out.mtld = mtld(tokens, mtld_threshold);
  return out;
}

}  // namespace adcue
