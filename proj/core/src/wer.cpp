#include "adcue/wer.hpp"

#include <algorithm>

#include "adcue/corpus.hpp"
#include "adcue/error.hpp"

namespace adcue {

WerBreakdown wer(std::span<const std::string> ref, std::span<const std::string> hyp) {
  if (ref.empty()) throw Error(ErrorKind::kInvalidArgument, "wer: empty reference");
  const std::size_t n = ref.size(), m = hyp.size();
  std::vector<std::size_t> dist((n + 1) * (m + 1));
  auto at = [&](std::size_t i, std::size_t j) -> std::size_t& { return dist[i * (m + 1) + j]; };
  for (std::size_t i = 0; i <= n; ++i) at(i, 0) = i;
  for (std::size_t j = 0; j <= m; ++j) at(0, j) = j;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const std::size_t sub = at(i - 1, j - 1) + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      at(i, j) = std::min({sub, at(i - 1, j) + 1, at(i, j - 1) + 1});
    }
  }
  WerBreakdown w;
  w.ref_len = n;
  std::size_t i = n, j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0 && at(i, j) == at(i - 1, j - 1) + (ref[i - 1] == hyp[j - 1] ? 0 : 1)) {
      if (ref[i - 1] != hyp[j - 1]) ++w.substitutions;
      --i;
      --j;
    } else if (i > 0 && at(i, j) == at(i - 1, j) + 1) {
      ++w.deletions;
      --i;
    } else {
      ++w.insertions;
      --j;
    }
  }
  w.wer = static_cast<double>(w.edits()) / static_cast<double>(n);
  return w;
}

WerBreakdown wer(std::string_view ref_text, std::string_view hyp_text) {
  const auto ref = normalize_text(ref_text);
  const auto hyp = normalize_text(hyp_text);
  return wer(ref.tokens, hyp.tokens);
}

double mean_wer(std::span<const WerBreakdown> pairs) {
  if (pairs.empty()) throw Error(ErrorKind::kInvalidArgument, "mean_wer: no pairs");
  double acc = 0.0;
  for (const auto& p : pairs) acc += p.wer;
  return acc / static_cast<double>(pairs.size());
}

double pooled_wer(std::span<const WerBreakdown> pairs) {
  std::size_t edits = 0, words = 0;
  for (const auto& p : pairs) {
    edits += p.edits();
    words += p.ref_len;
  }
  if (words == 0) throw Error(ErrorKind::kInvalidArgument, "pooled_wer: no reference words");
  return static_cast<double>(edits) / static_cast<double>(words);
}

}  // namespace adcue
