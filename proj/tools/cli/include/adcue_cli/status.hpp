#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace adcue::cli {

std::string sha256_hex(std::string_view bytes);
// Throws Error(kMissingFile) when the file cannot be read.
std::string sha256_file(const std::filesystem::path& path);

// Versions of the toolkit and the pieces that can change numeric output.
nlohmann::ordered_json version_info();

// Machine-readable record of one subcommand run. Paths are stored relative
// to the output directory when they live under it, so two output
// directories with identical content produce identical status files.
class StatusRecord {
 public:
  StatusRecord(std::string command, std::filesystem::path out_dir);

  void set_config(nlohmann::ordered_json config) { config_ = std::move(config); }
  void add_input(const std::filesystem::path& path);
  void add_output(const std::filesystem::path& path);
  // Listed without a hash (wall-clock logs and the like).
  void add_volatile_output(const std::filesystem::path& path);
  nlohmann::ordered_json& extra() { return extra_; }

  nlohmann::ordered_json to_json() const;
  // Writes <out>/status/<name>.json and returns the path.
  std::filesystem::path write(const std::string& name) const;

 private:
  std::string display(const std::filesystem::path& path) const;

  std::string command_;
  std::filesystem::path out_dir_;
  nlohmann::ordered_json config_;
  nlohmann::ordered_json inputs_ = nlohmann::ordered_json::array();
  nlohmann::ordered_json outputs_ = nlohmann::ordered_json::array();
  nlohmann::ordered_json extra_ = nlohmann::ordered_json::object();
};

}  // namespace adcue::cli
