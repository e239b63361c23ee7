#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <ostream>
#include <span>
#include <vector>
#include <json.hpp>

#include "adcue/embedding_store.hpp"
#include "adcue/models.hpp"

namespace adcue {

// z-scoring with statistics of the training split only. Zero-variance
// features get unit scale.
class Standardizer {
 public:
  void fit(std::span<const std::vector<double>> rows);
  std::vector<double> transform(std::span<const double> row) const;

  const std::vector<double>& mean() const { return mean_; }
  const std::vector<double>& scale() const { return scale_; }
  bool fitted() const { return !mean_.empty(); }

  nlohmann::json to_json() const;
  static Standardizer from_json(const nlohmann::json& j);

 private:
  std::vector<double> mean_;
  std::vector<double> scale_;
};

enum class ModelKind {
  kCrossAttention,       // embeddings + knowledge features
  kSelfAttnEmbeddings,   // baseline over embedding rows
  kSelfAttnKnowledge,    // baseline over the knowledge vector as one frame
};

std::string_view to_string(ModelKind kind);
ModelKind parse_model_kind(std::string_view text);

struct TrainConfig {
  double lr = 4e-4;
  double weight_decay = 1e-5;
  std::size_t epochs = 50;
  std::size_t batch_size = 16;
  std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  std::size_t hidden = 128;
  PoolMode pool = PoolMode::kMeanStd;
  ModelKind model = ModelKind::kCrossAttention;

  // Throws Error(kInvalidArgument) on non-positive values or empty seeds.
  void validate() const;
  nlohmann::json to_json() const;
  static TrainConfig from_json(const nlohmann::json& j);
};

struct PreparedData {
  Standardizer standardizer;
  std::vector<Example> train;
  std::vector<Example> test;
};

// Fits the standardizer on the training split and converts every sample
// (embeddings widened to 64-bit).
PreparedData prepare_data(std::span<const BoundSample> samples, ModelKind kind);
Example make_example(const BoundSample& s, const Standardizer& standardizer, ModelKind kind);

std::unique_ptr<Classifier> build_model(const TrainConfig& config, const Example& shape_source, Rng& rng);

struct EpochRecord {
  std::size_t epoch = 0;
  double mean_loss = 0.0;
  double seconds = 0.0;
};

struct TrainResult {
  std::unique_ptr<Classifier> model;
  std::vector<EpochRecord> history;
};

// Initializes from `seed`, then per epoch shuffles with the same generator,
// averages gradients over each batch and takes one AdamW step. Writes one
// JSON object per epoch to `log` when given. Throws Error(kNumeric) on a
// non-finite loss.
TrainResult train(const TrainConfig& config, std::span<const Example> train_set, std::uint64_t seed,
                  std::ostream* log = nullptr);

struct Evaluation {
  double accuracy = 0.0;
  std::vector<std::size_t> predictions;
};

Evaluation evaluate(const Classifier& model, std::span<const Example> test_set);

struct SeedRun {
  std::uint64_t seed = 0;
  Evaluation evaluation;
  TrainResult result;
};

struct MultiSeedResult {
  std::vector<SeedRun> runs;
  double mean_accuracy = 0.0;
  double std_accuracy = 0.0;
  std::size_t best = 0;  // highest accuracy, ties to the lowest seed
};

// Seeds train on up to `workers` threads (0 = hardware concurrency); results
// are identical for any worker count.
MultiSeedResult multi_seed_run(const TrainConfig& config, const PreparedData& data, std::ostream* log = nullptr,
                               unsigned workers = 0);

}  // namespace adcue
