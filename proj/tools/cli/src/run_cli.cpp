#include <CLI11.hpp>

#include <functional>
#include <map>

#include "adcue/assets.hpp"
#include "adcue_cli/commands.hpp"

namespace adcue::cli {

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"adcue: knowledge features, cross-attention classifier and attention analysis"};
  app.set_version_flag("--version", version_string());
  app.require_subcommand(1);

  std::string config_path, out_dir, seeds, condition;
  app.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "output directory (overrides the config)");
  app.add_option("--seeds", seeds, "seed list, e.g. 1..10 or 1,3,5");
  app.add_option("--condition", condition, "condition tag to process (overrides the config)");

  using Command = std::function<std::filesystem::path(const RunConfig&, std::ostream&)>;
  const std::vector<std::tuple<std::string, std::string, Command>> commands = {
      {"parse-chat", "normalize transcripts of a condition into token streams", cmd_parse_chat},
      {"text-feats", "extract the 35 text features from parsed tokens", cmd_text_feats},
      {"speech-feats", "extract the 60 speech features from audio", cmd_speech_feats},
      {"wer", "word error rate of hypothesis conditions against the reference", cmd_wer},
      {"train", "train one model per seed and score the test split", cmd_train},
      {"evaluate", "score trained checkpoints on one or more conditions", cmd_evaluate},
      {"interpret", "attention salience report for the best seed", cmd_interpret},
      {"synth-data", "write the planted-cue synthetic dataset", cmd_synth_data},
  };
  std::map<CLI::App*, Command> handlers;
  for (const auto& [name, help, fn] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    handlers[sub] = fn;
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    const int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? 0 : 2;
  }

  try {
    RunConfig config = config_path.empty() ? RunConfig{} : load_run_config(config_path);
    Overrides o;
    if (!out_dir.empty()) o.out = out_dir;
    if (!seeds.empty()) o.seeds = parse_seed_list(seeds);
    if (!condition.empty()) o.condition = condition;
    config = apply_overrides(std::move(config), o);
    for (const auto& [sub, fn] : handlers) {
      if (sub->parsed()) {
        const auto status = fn(config, out);
        out << "status: " << status.string() << '\n';
      }
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace adcue::cli
