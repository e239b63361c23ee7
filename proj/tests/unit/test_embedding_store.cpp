#include <doctest.h>

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>

#include <json.hpp>

#include "adcue/embedding_store.hpp"
#include "adcue/feature_table.hpp"
#include "adcue/manifest.hpp"
#include "adcue/stats.hpp"
#include "adcue/synthetic.hpp"
#include "test_support.hpp"

using namespace adcue;
using namespace adcue::testing;

namespace {

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

// Byte layout written by hand, the way an external producer would.
std::string emb1_bytes(std::uint32_t rows, std::uint32_t cols, const std::vector<float>& values) {
  std::string out = "EMB1";
  put_u32(out, rows);
  put_u32(out, cols);
  for (float f : values) put_u32(out, std::bit_cast<std::uint32_t>(f));
  return out;
}

void write_bytes(const std::filesystem::path& p, const std::string& bytes) {
  std::ofstream out(p, std::ios::binary);
  out << bytes;
}

EmbeddingMatrix matrix(std::size_t rows, std::size_t cols) {
  EmbeddingMatrix m;
  m.rows = rows;
  m.cols = cols;
  for (std::size_t i = 0; i < rows * cols; ++i) m.values.push_back(static_cast<float>(i) * 0.25f - 3.0f);
  return m;
}

}  // namespace

TEST_CASE("EMB1 round trip is exact") {
  TempDir dir("emb");
  auto m = matrix(7, 1024);
  m.values[5] = std::numeric_limits<float>::denorm_min();
  m.values[6] = -0.0f;
  write_embedding(dir / "a.emb", m);
  CHECK(std::filesystem::file_size(dir / "a.emb") == 12 + 7 * 1024 * 4);
  const auto back = read_embedding(dir / "a.emb");
  CHECK(back.rows == 7);
  CHECK(back.cols == 1024);
  CHECK(std::memcmp(back.values.data(), m.values.data(), m.values.size() * 4) == 0);
}

TEST_CASE("EMB1 reader accepts hand-built bytes") {
  TempDir dir("emb-hand");
  write_bytes(dir / "h.emb", emb1_bytes(2, 3, {1.0f, -2.5f, 0.0f, 3.25f, 1e-3f, 7.0f}));
  const auto m = read_embedding(dir / "h.emb");
  CHECK(m.rows == 2);
  CHECK(m.cols == 3);
  CHECK(m.at(0, 1) == -2.5f);
  CHECK(m.at(1, 0) == 3.25f);
  CHECK(m.row(1)[2] == 7.0f);
}

TEST_CASE("EMB1 reader errors") {
  TempDir dir("emb-bad");
  CHECK(error_kind_of([&] { read_embedding(dir / "none.emb"); }) == ErrorKind::kMissingFile);

  auto bytes = emb1_bytes(2, 2, {1, 2, 3, 4});
  auto magic = bytes;
  magic[3] = '2';
  write_bytes(dir / "magic.emb", magic);
  CHECK(error_kind_of([&] { read_embedding(dir / "magic.emb"); }) == ErrorKind::kBadMagic);

  write_bytes(dir / "short.emb", bytes.substr(0, bytes.size() - 3));
  try {
    read_embedding(dir / "short.emb");
    FAIL("expected truncation");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kTruncated);
    CHECK(std::string(e.what()).find("2x2") != std::string::npos);
  }
  write_bytes(dir / "long.emb", bytes + "x");
  CHECK(error_kind_of([&] { read_embedding(dir / "long.emb"); }) == ErrorKind::kTruncated);
  write_bytes(dir / "hdr.emb", bytes.substr(0, 8));
  CHECK(error_kind_of([&] { read_embedding(dir / "hdr.emb"); }) == ErrorKind::kTruncated);
  write_bytes(dir / "zero.emb", emb1_bytes(0, 4, {}));
  CHECK(error_kind_of([&] { read_embedding(dir / "zero.emb"); }) == ErrorKind::kSchema);
  write_bytes(dir / "nan.emb", emb1_bytes(1, 1, {std::numeric_limits<float>::quiet_NaN()}));
  CHECK(error_kind_of([&] { read_embedding(dir / "nan.emb"); }) == ErrorKind::kSchema);
  write_bytes(dir / "huge.emb", emb1_bytes(0xffffffffu, 0xffffffffu, {}));
  CHECK(error_kind_of([&] { read_embedding(dir / "huge.emb"); }) == ErrorKind::kDimensionOverflow);

  EmbeddingMatrix empty;
  CHECK(error_kind_of([&] { write_embedding(dir / "e.emb", empty); }) == ErrorKind::kInvalidArgument);
  auto inf = matrix(1, 2);
  inf.values[0] = std::numeric_limits<float>::infinity();
  CHECK(error_kind_of([&] { write_embedding(dir / "i.emb", inf); }) == ErrorKind::kInvalidArgument);
}

TEST_CASE("manifest embedding_path interface binds samples") {
  TempDir dir("bind");
  std::filesystem::create_directories(dir / "emb");
  write_bytes(dir / "emb/s1.emb", emb1_bytes(2, 4, {1, 2, 3, 4, 5, 6, 7, 8}));
  write_embedding(dir / "emb/s2.emb", matrix(3, 4));
  const nlohmann::json manifest = {
      {"entries",
       {{{"sample_id", "s1"}, {"label", "AD"}, {"condition", "asr:tiny"}, {"split", "train"},
         {"embedding_path", "emb/s1.emb"}},
        {{"sample_id", "s2"}, {"label", "HC"}, {"condition", "asr:tiny"}, {"split", "test"},
         {"embedding_path", "emb/s2.emb"}}}}};
  {
    std::ofstream out(dir / "manifest.json");
    out << manifest.dump(2);
  }
  FeatureTable ft;
  ft.names = {"a", "b"};
  ft.add("s2", {0.5, 1.5});
  ft.add("s1", {-1.0, 2.0});

  Diagnostics diag;
  const auto bound = bind_dataset(load_manifest(dir / "manifest.json"), "asr:tiny", ft, &diag);
  REQUIRE(bound.size() == 2);
  CHECK(bound[0].sample_id == "s1");
  CHECK(bound[0].knowledge == std::vector<double>{-1.0, 2.0});
  CHECK(bound[0].embedding.at(1, 3) == 8.0f);
  CHECK(bound[1].label == Label::kHC);
  CHECK(bound[1].split == Split::kTest);
  CHECK(bound[1].embedding.rows == 3);
  CHECK(diag.count("non-standard-dim") == 2);

  CHECK(error_kind_of([&] { bind_dataset(load_manifest(dir / "manifest.json"), "manual", ft); }) ==
        ErrorKind::kMissingPrerequisite);
}

TEST_CASE("bind_dataset lists every offender") {
  TempDir dir("bind-missing");
  write_embedding(dir / "s1.emb", matrix(1, 1024));
  write_embedding(dir / "s3.emb", matrix(1, 1024));
  const std::string text = R"({"entries": [
    {"sample_id": "s1", "label": "AD", "condition": "c", "split": "train", "embedding_path": "s1.emb"},
    {"sample_id": "s2", "label": "AD", "condition": "c", "split": "train"},
    {"sample_id": "s3", "label": "HC", "condition": "c", "split": "train", "embedding_path": "s3.emb"}]})";
  const auto m = parse_manifest(text, dir.path());
  FeatureTable ft;
  ft.names = {"a"};
  ft.add("s1", {1.0});
  ft.add("s2", {1.0});
  Diagnostics diag;
  try {
    bind_dataset(m, "c", ft, &diag);
    FAIL("expected missing prerequisite");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kMissingPrerequisite);
    const std::string what = e.what();
    CHECK(what.find("s2 (no embedding_path)") != std::string::npos);
    CHECK(what.find("s3 (no feature row)") != std::string::npos);
    CHECK(what.find("s1") == std::string::npos);
  }
  ft.add("s3", {2.0});
  std::filesystem::remove(dir / "s3.emb");
  try {
    bind_dataset(m, "c", ft);
    FAIL("expected missing prerequisite");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("embedding file not found") != std::string::npos);
  }
}

TEST_CASE("feature CSV round trip is exact") {
  TempDir dir("csv");
  FeatureTable t;
  t.names = {"x", "y"};
  t.add("a", {0.1, 1.0 / 3.0});
  t.add("b", {-1e-300, 12345.678901234567});
  write_feature_csv(t, dir / "f.csv");
  const auto back = read_feature_csv(dir / "f.csv");
  CHECK(back.names == t.names);
  CHECK(back.sample_ids == t.sample_ids);
  CHECK(back.rows == t.rows);
  CHECK(back.find("b").has_value());
  CHECK_FALSE(back.find("c").has_value());
}

TEST_CASE("synthetic data: determinism and planted separation") {
  SyntheticSpec spec;
  spec.train_per_class = 100;
  spec.test_per_class = 10;
  spec.embedding_dim = 16;
  const auto a = generate_synthetic(spec);
  const auto b = generate_synthetic(spec);
  REQUIRE(a.samples.size() == 220);
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    CHECK(a.samples[i].knowledge == b.samples[i].knowledge);
    CHECK(a.samples[i].embedding.values == b.samples[i].embedding.values);
    CHECK(a.samples[i].embedding.rows >= spec.n_min);
    CHECK(a.samples[i].embedding.rows <= spec.n_max);
  }
  CHECK(a.samples.front().split == Split::kTrain);
  CHECK(a.samples.back().split == Split::kTest);
  CHECK(a.feature_names.size() == 35);
  CHECK(a.feature_names[0] == "ttr");

  // Class gap in units of the within-class spread; features live on very
  // different scales.
  for (std::size_t j = 0; j < 35; ++j) {
    std::vector<double> ad, hc;
    for (const auto& s : a.samples) (s.label == Label::kAD ? ad : hc).push_back(s.knowledge[j]);
    REQUIRE(ad.size() == hc.size());
    const double spread = (stats::population_std(ad) + stats::population_std(hc)) / 2.0;
    const double gap = std::abs(stats::mean(ad) - stats::mean(hc)) / spread;
    const bool planted = j == 4 || j == 17 || j == 28;
    if (planted) {
      CHECK(gap > 1.5);
    } else {
      CHECK(gap < 0.6);
    }
  }

  spec.seed = 8;
  CHECK(generate_synthetic(spec).samples[0].knowledge != a.samples[0].knowledge);
  spec.planted = {35};
  CHECK(error_kind_of([&] { validate(spec); }) == ErrorKind::kInvalidArgument);
  spec.planted = {1};
  spec.n_min = 5;
  spec.n_max = 4;
  CHECK(error_kind_of([&] { validate(spec); }) == ErrorKind::kInvalidArgument);
  CHECK(knowledge_feature_names(60)[18] == "jitter");
  CHECK(knowledge_feature_names(3) == std::vector<std::string>{"f0", "f1", "f2"});
}

TEST_CASE("write_synthetic produces a loadable dataset") {
  TempDir dir("synth");
  SyntheticSpec spec;
  spec.train_per_class = 3;
  spec.test_per_class = 2;
  spec.embedding_dim = 8;
  const auto data = generate_synthetic(spec);
  write_synthetic(data, dir.path());
  const auto manifest = load_manifest(dir / "manifest.json");
  const auto ft = read_feature_csv(dir / "features.csv");
  Diagnostics diag;
  const auto bound = bind_dataset(manifest, "synthetic", ft, &diag);
  REQUIRE(bound.size() == data.samples.size());
  for (std::size_t i = 0; i < bound.size(); ++i) {
    CHECK(bound[i].knowledge == data.samples[i].knowledge);
    CHECK(bound[i].embedding.values == data.samples[i].embedding.values);
  }
  std::ifstream gt(dir / "ground_truth.json");
  const auto truth = nlohmann::json::parse(gt);
  CHECK(truth.dump().find("17") != std::string::npos);
}
