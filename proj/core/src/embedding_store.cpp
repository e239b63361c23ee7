#include "adcue/embedding_store.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>

#include "adcue/error.hpp"

namespace adcue {

namespace {

constexpr char kMagic[4] = {'E', 'M', 'B', '1'};
constexpr std::size_t kHeaderBytes = 12;

void put_u32(unsigned char* p, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) p[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
}

std::uint32_t get_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

}  // namespace

void write_embedding(const std::filesystem::path& path, const EmbeddingMatrix& m) {
  if (m.rows == 0 || m.cols == 0 || m.values.size() != m.rows * m.cols) {
    throw Error(ErrorKind::kInvalidArgument, "write_embedding: matrix must be non-empty with rows*cols values");
  }
  if (m.rows > std::numeric_limits<std::uint32_t>::max() || m.cols > std::numeric_limits<std::uint32_t>::max()) {
    throw Error(ErrorKind::kDimensionOverflow, "write_embedding: dimensions exceed 32 bits");
  }
  for (float v : m.values) {
    if (!std::isfinite(v)) throw Error(ErrorKind::kInvalidArgument, "write_embedding: non-finite value");
  }
  std::vector<unsigned char> bytes(kHeaderBytes + 4 * m.values.size());
  std::memcpy(bytes.data(), kMagic, 4);
  put_u32(bytes.data() + 4, static_cast<std::uint32_t>(m.rows));
  put_u32(bytes.data() + 8, static_cast<std::uint32_t>(m.cols));
  for (std::size_t i = 0; i < m.values.size(); ++i) {
    put_u32(bytes.data() + kHeaderBytes + 4 * i, std::bit_cast<std::uint32_t>(m.values[i]));
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIo, "cannot write embedding file " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorKind::kIo, "short write to " + path.string());
}

EmbeddingMatrix read_embedding(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kMissingFile, "cannot open embedding file " + path.string());
  const std::string name = path.string();
  unsigned char header[kHeaderBytes];
  in.read(reinterpret_cast<char*>(header), kHeaderBytes);
  if (in.gcount() >= 4 && std::memcmp(header, kMagic, 4) != 0) {
    throw Error(ErrorKind::kBadMagic, name + ": expected magic EMB1");
  }
  if (in.gcount() != static_cast<std::streamsize>(kHeaderBytes)) {
    throw Error(ErrorKind::kTruncated, name + ": header shorter than 12 bytes");
  }
  EmbeddingMatrix m;
  m.rows = get_u32(header + 4);
  m.cols = get_u32(header + 8);
  if (m.rows == 0 || m.cols == 0) throw Error(ErrorKind::kSchema, name + ": zero rows or columns");
  const std::uint64_t count = static_cast<std::uint64_t>(m.rows) * m.cols;
  if (count > std::numeric_limits<std::size_t>::max() / 4 || count > (std::uint64_t{1} << 40)) {
    throw Error(ErrorKind::kDimensionOverflow, name + ": " + std::to_string(m.rows) + "x" +
                                                   std::to_string(m.cols) + " is too large");
  }
  const std::size_t payload = static_cast<std::size_t>(count) * 4;
  std::vector<unsigned char> bytes(payload);
  in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(payload));
  if (static_cast<std::size_t>(in.gcount()) != payload) {
    throw Error(ErrorKind::kTruncated, name + ": header declares " + std::to_string(m.rows) + "x" +
                                           std::to_string(m.cols) + " but payload has " +
                                           std::to_string(in.gcount()) + " of " + std::to_string(payload) +
                                           " bytes");
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    throw Error(ErrorKind::kTruncated, name + ": trailing bytes after payload");
  }
  m.values.resize(static_cast<std::size_t>(count));
  for (std::size_t i = 0; i < m.values.size(); ++i) {
    m.values[i] = std::bit_cast<float>(get_u32(bytes.data() + 4 * i));
    if (!std::isfinite(m.values[i])) throw Error(ErrorKind::kSchema, name + ": non-finite value");
  }
  return m;
}

std::vector<BoundSample> bind_dataset(const DatasetManifest& manifest, const std::string& condition,
                                      const FeatureTable& features, Diagnostics* diag) {
  std::vector<BoundSample> out;
  std::vector<std::string> problems;
  const auto entries = manifest.for_condition(condition);
  if (entries.empty()) {
    throw Error(ErrorKind::kMissingPrerequisite, "manifest has no entries for condition '" + condition + "'");
  }
  for (const ManifestEntry* e : entries) {
    const auto row = features.find(e->sample_id);
    const bool has_embedding = e->embedding_path && std::filesystem::exists(*e->embedding_path);
    if (!row) problems.push_back(e->sample_id + " (no feature row)");
    if (!has_embedding) {
      problems.push_back(e->sample_id + (e->embedding_path ? " (embedding file not found: " +
                                                                 e->embedding_path->string() + ")"
                                                           : " (no embedding_path)"));
    }
    if (!row || !has_embedding) continue;
    BoundSample s;
    s.sample_id = e->sample_id;
    s.embedding = read_embedding(*e->embedding_path);
    s.knowledge.assign(row->begin(), row->end());
    s.label = e->label;
    s.split = e->split;
    if (s.embedding.cols != kEmbeddingDim && diag) {
      diag->note("non-standard-dim", s.sample_id + ": " + std::to_string(s.embedding.cols) + " columns");
    }
    out.push_back(std::move(s));
  }
  if (!problems.empty()) {
    std::string msg = "condition '" + condition + "': missing inputs for";
    for (const auto& p : problems) msg += "\n  " + p;
    throw Error(ErrorKind::kMissingPrerequisite, msg);
  }
  return out;
}

}  // namespace adcue
