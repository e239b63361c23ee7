#include "adcue/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>

#include "adcue/error.hpp"
#include "adcue/feature_table.hpp"
#include "adcue/rng.hpp"
#include "adcue/speech_features.hpp"
#include "adcue/text_features.hpp"

namespace adcue {

void validate(const SyntheticSpec& spec) {
  auto fail = [](const std::string& msg) { throw Error(ErrorKind::kInvalidArgument, "synthetic spec: " + msg); };
  if (spec.feature_count == 0 || spec.embedding_dim == 0) fail("feature_count and embedding_dim must be positive");
  if (spec.n_min == 0 || spec.n_max < spec.n_min) fail("need 1 <= n_min <= n_max");
  if (spec.train_per_class == 0) fail("train_per_class must be positive");
  if (!(spec.effect_size >= 0.0)) fail("effect_size must be >= 0");
  if (!(spec.noise >= 0.0)) fail("noise must be >= 0");
  if (spec.planted.empty()) fail("no planted features");
  for (std::size_t j : spec.planted) {
    if (j >= spec.feature_count) {
      fail("planted index " + std::to_string(j) + " out of range for " + std::to_string(spec.feature_count) +
           " features");
    }
  }
}

std::vector<std::string> knowledge_feature_names(std::size_t m) {
  std::vector<std::string> names;
  if (m == kTextFeatureCount) {
    for (auto n : text_feature_names()) names.emplace_back(n);
  } else if (m == kSpeechFeatureCount) {
    for (auto n : speech_feature_names()) names.emplace_back(n);
  } else {
    for (std::size_t j = 0; j < m; ++j) names.push_back("f" + std::to_string(j));
  }
  return names;
}

SyntheticDataset generate_synthetic(const SyntheticSpec& spec) {
  validate(spec);
  Rng rng(spec.seed);
  const std::size_t m = spec.feature_count, d = spec.embedding_dim;
  std::vector<bool> is_planted(m, false);
  for (std::size_t j : spec.planted) is_planted[j] = true;

  // Feature scales vary over orders of magnitude, as real features do.
  std::vector<double> mu(m), sigma(m);
  for (std::size_t j = 0; j < m; ++j) {
    mu[j] = rng.uniform(-50.0, 50.0);
    sigma[j] = std::pow(10.0, rng.uniform(-2.0, 1.0));
  }
  std::vector<double> direction(d);
  for (double& v : direction) v = rng.normal();

  SyntheticDataset out;
  out.spec = spec;
  out.feature_names = knowledge_feature_names(m);
  auto make = [&](Split split, Label label, std::size_t index) {
    BoundSample s;
    char id[64];
    std::snprintf(id, sizeof id, "syn-%s-%s-%03zu", split == Split::kTrain ? "train" : "test",
                  label == Label::kAD ? "ad" : "hc", index);
    s.sample_id = id;
    s.label = label;
    s.split = split;
    const double sign = label == Label::kAD ? 1.0 : -1.0;
    const std::size_t n = spec.n_min + rng.below(spec.n_max - spec.n_min + 1);
    s.knowledge.resize(m);
    double planted_dev = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      double z = rng.normal();
      if (is_planted[j]) {
        z += sign * spec.effect_size / 2.0;
        planted_dev += z;
      }
      s.knowledge[j] = mu[j] + sigma[j] * z;
    }
    const double amplitude = spec.signal * planted_dev / static_cast<double>(spec.planted.size());
    s.embedding.rows = n;
    s.embedding.cols = d;
    s.embedding.values.resize(n * d);
    for (std::size_t t = 0; t < n; ++t) {
      for (std::size_t c = 0; c < d; ++c) {
        s.embedding.values[t * d + c] = static_cast<float>(spec.noise * rng.normal() + amplitude * direction[c]);
      }
    }
    return s;
  };
  for (Split split : {Split::kTrain, Split::kTest}) {
    const std::size_t per_class = split == Split::kTrain ? spec.train_per_class : spec.test_per_class;
    for (std::size_t i = 0; i < per_class; ++i) {
      out.samples.push_back(make(split, Label::kAD, i));
      out.samples.push_back(make(split, Label::kHC, i));
    }
  }
  return out;
}

void write_synthetic(const SyntheticDataset& data, const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir / "embeddings");
  DatasetManifest manifest;
  FeatureTable table;
  table.names = data.feature_names;
  for (const auto& s : data.samples) {
    const fs::path emb = dir / "embeddings" / (s.sample_id + ".emb");
    write_embedding(emb, s.embedding);
    table.add(s.sample_id, s.knowledge);
    ManifestEntry e;
    e.sample_id = s.sample_id;
    e.label = s.label;
    e.condition = "synthetic";
    e.split = s.split;
    e.embedding_path = emb;
    manifest.entries.push_back(std::move(e));
  }
  write_feature_csv(table, dir / "features.csv");
  save_manifest(manifest, dir / "manifest.json");

  const auto& sp = data.spec;
  nlohmann::ordered_json truth = {
      {"planted", sp.planted},
      {"planted_names", nlohmann::json::array()},
      {"effect_size", sp.effect_size},
      {"noise", sp.noise},
      {"signal", sp.signal},
      {"seed", sp.seed},
      {"feature_count", sp.feature_count},
      {"embedding_dim", sp.embedding_dim},
      {"n_range", {sp.n_min, sp.n_max}},
      {"train_per_class", sp.train_per_class},
      {"test_per_class", sp.test_per_class}};
  for (std::size_t j : sp.planted) truth["planted_names"].push_back(data.feature_names[j]);
  std::ofstream f(dir / "ground_truth.json");
  if (!f) throw Error(ErrorKind::kIo, "cannot write " + (dir / "ground_truth.json").string());
  f << truth.dump(2) << '\n';
}

}  // namespace adcue
