#include "adcue_cli/status.hpp"

#include <openssl/evp.h>

#include <Eigen/Core>
#include <array>
#include <cstdio>
#include <fstream>
#include <memory>

#include "adcue/assets.hpp"
#include "adcue/error.hpp"

namespace adcue::cli {
namespace {

namespace fs = std::filesystem;

struct DigestDeleter {
  void operator()(EVP_MD_CTX* ctx) const { EVP_MD_CTX_free(ctx); }
};

class Sha256 {
 public:
  Sha256() : ctx_(EVP_MD_CTX_new()) {
    if (!ctx_ || EVP_DigestInit_ex(ctx_.get(), EVP_sha256(), nullptr) != 1) {
      throw Error(ErrorKind::kIo, "sha256: digest initialization failed");
    }
  }
  void update(const char* data, std::size_t n) { EVP_DigestUpdate(ctx_.get(), data, n); }
  std::string hex() {
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx_.get(), md.data(), &len);
    std::string out;
    char buf[3];
    for (unsigned int i = 0; i < len; ++i) {
      std::snprintf(buf, sizeof buf, "%02x", md[i]);
      out += buf;
    }
    return out;
  }

 private:
  std::unique_ptr<EVP_MD_CTX, DigestDeleter> ctx_;
};

}  // namespace

std::string sha256_hex(std::string_view bytes) {
  Sha256 h;
  h.update(bytes.data(), bytes.size());
  return h.hex();
}

std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kMissingFile, "cannot hash missing file: " + path.string());
  Sha256 h;
  std::array<char, 1 << 16> buf{};
  while (in) {
    in.read(buf.data(), buf.size());
    h.update(buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  return h.hex();
}

nlohmann::ordered_json version_info() {
  return {{"adcue", version_string()},
          {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                        std::to_string(EIGEN_MINOR_VERSION)},
          {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
          {"compiler", __VERSION__}};
}

StatusRecord::StatusRecord(std::string command, fs::path out_dir)
    : command_(std::move(command)), out_dir_(std::move(out_dir)) {}

std::string StatusRecord::display(const fs::path& path) const {
  std::error_code ec;
  const fs::path abs = fs::weakly_canonical(path, ec);
  const fs::path base = fs::weakly_canonical(out_dir_, ec);
  const fs::path rel = abs.lexically_relative(base);
  if (!rel.empty() && *rel.begin() != "..") return rel.generic_string();
  return abs.generic_string();
}

void StatusRecord::add_input(const fs::path& path) {
  inputs_.push_back({{"path", display(path)}, {"sha256", sha256_file(path)}});
}

void StatusRecord::add_output(const fs::path& path) {
  outputs_.push_back({{"path", display(path)}, {"sha256", sha256_file(path)}});
}

void StatusRecord::add_volatile_output(const fs::path& path) {
  outputs_.push_back({{"path", display(path)}, {"sha256", nullptr}});
}

nlohmann::ordered_json StatusRecord::to_json() const {
  nlohmann::ordered_json j;
  j["command"] = command_;
  j["ok"] = true;
  j["versions"] = version_info();
  j["config"] = config_;
  j["inputs"] = inputs_;
  j["outputs"] = outputs_;
  if (!extra_.empty()) j["details"] = extra_;
  return j;
}

fs::path StatusRecord::write(const std::string& name) const {
  const fs::path dir = out_dir_ / "status";
  fs::create_directories(dir);
  const fs::path path = dir / (name + ".json");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIo, "cannot write status file " + path.string());
  out << to_json().dump(2) << '\n';
  return path;
}

}  // namespace adcue::cli
