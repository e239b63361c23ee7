#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "adcue_cli/run_config.hpp"

namespace adcue::cli {

// Per-run overrides from the command line, applied on top of the config.
struct Overrides {
  std::optional<std::filesystem::path> out;
  std::optional<std::vector<std::uint64_t>> seeds;
  std::optional<std::string> condition;
};

RunConfig apply_overrides(RunConfig config, const Overrides& o);

// Artifact locations under the output directory.
std::string file_tag(const std::string& condition);
std::filesystem::path tokens_path(const RunConfig& c, const std::string& condition);
std::filesystem::path feature_path(const RunConfig& c, const std::string& kind, const std::string& condition);
std::filesystem::path model_dir(const RunConfig& c, const std::string& condition);
std::filesystem::path manifest_path(const RunConfig& c, const std::string& condition);

// Each subcommand writes its artifacts and a status file and returns the
// status path. Failures throw adcue::Error; a missing prerequisite names the
// subcommand that produces it.
std::filesystem::path cmd_parse_chat(const RunConfig& c, std::ostream& log);
std::filesystem::path cmd_text_feats(const RunConfig& c, std::ostream& log);
std::filesystem::path cmd_speech_feats(const RunConfig& c, std::ostream& log);
std::filesystem::path cmd_wer(const RunConfig& c, std::ostream& log);
std::filesystem::path cmd_train(const RunConfig& c, std::ostream& log);
std::filesystem::path cmd_evaluate(const RunConfig& c, std::ostream& log);
std::filesystem::path cmd_interpret(const RunConfig& c, std::ostream& log);
std::filesystem::path cmd_synth_data(const RunConfig& c, std::ostream& log);

// Full command-line entry point: returns the process exit code (0 success,
// 1 toolkit error, 2 usage error).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace adcue::cli
