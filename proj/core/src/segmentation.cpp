#include <cmath>

#include "adcue/speech_features.hpp"

namespace adcue {

std::string_view to_string(SegmentKind kind) {
  switch (kind) {
    case SegmentKind::kVoiced: return "VOICED";
    case SegmentKind::kUnvoiced: return "UNVOICED";
    case SegmentKind::kPause: return "PAUSE";
  }
  return "PAUSE";
}

namespace {

struct Run {
  SegmentKind kind;
  std::size_t begin;  // frame indices, half-open
  std::size_t end;
};

std::vector<Run> merge_runs(const std::vector<Run>& runs) {
  std::vector<Run> out;
  for (const auto& r : runs) {
    if (!out.empty() && out.back().kind == r.kind) {
      out.back().end = r.end;
    } else {
      out.push_back(r);
    }
  }
  return out;
}

}  // namespace

std::vector<Segment> segment_vup(const F0Contour& contour, const SpeechConfig& config) {
  const std::size_t n = contour.size();
  if (n == 0) {
    if (contour.duration_s > 0.0) return {{SegmentKind::kPause, 0.0, contour.duration_s}};
    return {};
  }
  std::vector<Run> runs;
  for (std::size_t k = 0; k < n; ++k) {
    SegmentKind kind = SegmentKind::kUnvoiced;
    if (contour.voiced[k]) {
      kind = SegmentKind::kVoiced;
    } else if (!(contour.gate_db[k] > contour.silence_floor_db)) {
      kind = SegmentKind::kPause;
    }
    runs.push_back({kind, k, k + 1});
  }
  runs = merge_runs(runs);

  if (runs.size() > 1) {
    const auto min_frames = static_cast<std::size_t>(std::ceil(config.min_pause_s / contour.hop_s - 1e-9));
    for (std::size_t i = 0; i < runs.size(); ++i) {
      if (runs[i].kind != SegmentKind::kPause || runs[i].end - runs[i].begin >= min_frames) continue;
      if (i > 0) {
        runs[i].kind = runs[i - 1].kind;
      } else {
        runs[i].kind = runs[i + 1].kind;
      }
    }
    runs = merge_runs(runs);
  }

  // Boundaries sit halfway between neighbouring frame centres.
  auto boundary = [&](std::size_t k) { return 0.5 * (contour.times[k - 1] + contour.times[k]); };
  std::vector<Segment> spans;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const double start = i == 0 ? 0.0 : boundary(runs[i].begin);
    const double end = i + 1 == runs.size() ? contour.duration_s : boundary(runs[i].end);
    spans.push_back({runs[i].kind, start, end});
  }
  return spans;
}

}  // namespace adcue
