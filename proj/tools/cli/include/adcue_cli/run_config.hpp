#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "adcue/speech_features.hpp"
#include "adcue/synthetic.hpp"
#include "adcue/text_features.hpp"
#include "adcue/training.hpp"

namespace adcue::cli {

// Everything a subcommand needs; the status file stores to_json() so a run
// can be repeated exactly.
struct RunConfig {
  std::filesystem::path manifest;  // empty: <out>/synthetic/manifest.json for "synthetic"
  std::vector<std::string> conditions = {"manual"};
  std::string speaker = "PAR";
  TextFeatureConfig text;
  std::filesystem::path mrc;  // empty: bundled sample dictionary
  SpeechConfig speech;
  TrainConfig train;
  std::string features = "text";  // knowledge table used by train/evaluate/interpret
  std::filesystem::path out = "adcue-out";
  SyntheticSpec synthetic;
  std::string wer_reference = "manual";
  std::vector<std::string> interpret_conditions;  // empty: the model's condition
  std::size_t top_k = 5;

  // Throws Error(kInvalidArgument) on empty conditions/seeds or an unknown
  // feature kind.
  void validate() const;
  nlohmann::ordered_json to_json() const;
};

// Unknown keys are rejected (kSchema). Relative paths resolve against
// base_dir.
RunConfig run_config_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir);
RunConfig load_run_config(const std::filesystem::path& path);

// "1..10", "3", "1,4,9" or a mix such as "1..3,7".
std::vector<std::uint64_t> parse_seed_list(std::string_view text);

nlohmann::ordered_json speech_config_to_json(const SpeechConfig& c);
SpeechConfig speech_config_from_json(const nlohmann::json& j);
nlohmann::ordered_json synthetic_spec_to_json(const SyntheticSpec& s);
SyntheticSpec synthetic_spec_from_json(const nlohmann::json& j);

}  // namespace adcue::cli
