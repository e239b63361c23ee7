#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "adcue/embedding_store.hpp"

namespace adcue {

// Planted-signal dataset. Only the planted knowledge features differ between
// classes (by effect_size standard deviations); every embedding row carries
// a fixed direction scaled by the sample's mean planted deviation.
struct SyntheticSpec {
  std::size_t train_per_class = 100;
  std::size_t test_per_class = 24;
  std::size_t n_min = 4;  // embedding rows per sample, inclusive range
  std::size_t n_max = 12;
  std::size_t feature_count = 35;
  std::size_t embedding_dim = kEmbeddingDim;
  std::vector<std::size_t> planted = {4, 17, 28};
  double effect_size = 2.0;
  double noise = 1.0;
  double signal = 1.0;
  std::uint64_t seed = 7;
};

// Throws Error(kInvalidArgument) on out-of-range planted indices, an empty or
// reversed n range, or a negative effect size.
void validate(const SyntheticSpec& spec);

struct SyntheticDataset {
  SyntheticSpec spec;
  std::vector<std::string> feature_names;
  std::vector<BoundSample> samples;  // training samples first, then test
};

// Feature names: the text inventory for 35, the speech inventory for 60,
// f0..f{m-1} otherwise.
std::vector<std::string> knowledge_feature_names(std::size_t m);

SyntheticDataset generate_synthetic(const SyntheticSpec& spec);

// Writes embeddings/<id>.emb, features.csv, manifest.json (condition
// "synthetic") and ground_truth.json under dir.
void write_synthetic(const SyntheticDataset& data, const std::filesystem::path& dir);

}  // namespace adcue
