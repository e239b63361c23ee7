#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "adcue/diagnostics.hpp"
#include "adcue/feature_table.hpp"
#include "adcue/manifest.hpp"

namespace adcue {

inline constexpr std::size_t kEmbeddingDim = 1024;

// Row-major 32-bit matrix, one row per token or time step.
struct EmbeddingMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<float> values;

  float at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
  const float* row(std::size_t r) const { return values.data() + r * cols; }
};

// EMB1: "EMB1", u32 LE rows, u32 LE cols, rows*cols f32 LE, nothing else.
// Throws Error(kInvalidArgument) for empty or non-finite matrices and
// Error(kDimensionOverflow) when a dimension exceeds 32 bits.
void write_embedding(const std::filesystem::path& path, const EmbeddingMatrix& m);

// Throws kMissingFile, kBadMagic, kTruncated (payload shorter than the
// header promises, or trailing bytes), kDimensionOverflow (rows*cols does
// not fit in memory arithmetic) or kSchema (zero rows/cols, non-finite).
EmbeddingMatrix read_embedding(const std::filesystem::path& path);

struct BoundSample {
  std::string sample_id;
  EmbeddingMatrix embedding;
  std::vector<double> knowledge;
  Label label = Label::kAD;
  Split split = Split::kTrain;
};

// Aligns manifest entries of one condition with their embedding files and
// feature rows. All offenders are listed in one Error(kMissingPrerequisite).
// Embedding widths other than 1024 are loaded with a "non-standard-dim"
// diagnostic.
std::vector<BoundSample> bind_dataset(const DatasetManifest& manifest, const std::string& condition,
                                      const FeatureTable& features, Diagnostics* diag = nullptr);

}  // namespace adcue
