#include "adcue/checkpoint.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>

#include "adcue/error.hpp"

namespace adcue {

namespace {

constexpr char kMagic[4] = {'C', 'K', 'P', '1'};

void put_u32(std::vector<unsigned char>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<unsigned char>((v >> (8 * i)) & 0xff));
}

void put_u64(std::vector<unsigned char>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<unsigned char>((v >> (8 * i)) & 0xff));
}

std::uint64_t get_u64(const unsigned char* p) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

}  // namespace

void save_checkpoint(const std::filesystem::path& path, const ParamSet& params, const nlohmann::json& meta) {
  nlohmann::ordered_json index;
  index["tensors"] = nlohmann::ordered_json::array();
  std::vector<unsigned char> payload;
  for (const auto& p : params.all()) {
    index["tensors"].push_back({{"name", p.name},
                                {"rows", p.value.rows()},
                                {"cols", p.value.cols()},
                                {"offset", payload.size()}});
    const double* d = p.value.data();
    for (Eigen::Index i = 0; i < p.value.size(); ++i) put_u64(payload, std::bit_cast<std::uint64_t>(d[i]));
  }
  index["meta"] = meta;
  const std::string text = index.dump();
  std::vector<unsigned char> out(kMagic, kMagic + 4);
  put_u32(out, static_cast<std::uint32_t>(text.size()));
  out.insert(out.end(), text.begin(), text.end());
  out.insert(out.end(), payload.begin(), payload.end());
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorKind::kIo, "cannot write checkpoint " + path.string());
  f.write(reinterpret_cast<const char*>(out.data()), static_cast<std::streamsize>(out.size()));
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::kMissingFile, "cannot open checkpoint " + path.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  const std::string name = path.string();
  if (bytes.size() < 8 || std::memcmp(bytes.data(), kMagic, 4) != 0) {
    throw Error(ErrorKind::kBadMagic, name + ": expected magic CKP1");
  }
  const std::uint32_t len = static_cast<std::uint32_t>(bytes[4]) | (static_cast<std::uint32_t>(bytes[5]) << 8) |
                            (static_cast<std::uint32_t>(bytes[6]) << 16) |
                            (static_cast<std::uint32_t>(bytes[7]) << 24);
  if (8 + static_cast<std::size_t>(len) > bytes.size()) throw Error(ErrorKind::kTruncated, name + ": index truncated");
  nlohmann::json index;
  try {
    index = nlohmann::json::parse(bytes.begin() + 8, bytes.begin() + 8 + len);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kParse, name + ": bad index JSON: " + e.what());
  }
  const std::size_t base = 8 + len;
  Checkpoint ck;
  ck.meta = index.value("meta", nlohmann::json::object());
  for (const auto& t : index.at("tensors")) {
    const auto rows = t.at("rows").get<Eigen::Index>();
    const auto cols = t.at("cols").get<Eigen::Index>();
    const auto offset = t.at("offset").get<std::size_t>();
    const std::size_t need = static_cast<std::size_t>(rows * cols) * 8;
    if (base + offset + need > bytes.size()) {
      throw Error(ErrorKind::kTruncated, name + ": tensor " + t.at("name").get<std::string>() + " truncated");
    }
    Tensor2 v(rows, cols);
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      v.data()[i] = std::bit_cast<double>(get_u64(bytes.data() + base + offset + 8 * static_cast<std::size_t>(i)));
    }
    ck.params.add(t.at("name").get<std::string>(), std::move(v));
  }
  return ck;
}

void restore_params(ParamSet& target, const ParamSet& source) {
  for (auto& p : target.all()) {
    if (!source.contains(p.name)) throw Error(ErrorKind::kSchema, "checkpoint lacks parameter '" + p.name + "'");
    const auto& s = source.get(p.name);
    if (s.value.rows() != p.value.rows() || s.value.cols() != p.value.cols()) {
      throw Error(ErrorKind::kSchema, "parameter '" + p.name + "' is " + shape_string(p.value) +
                                          " but checkpoint has " + shape_string(s.value));
    }
    p.value = s.value;
  }
}

}  // namespace adcue
