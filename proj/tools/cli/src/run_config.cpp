#include "adcue_cli/run_config.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "adcue/error.hpp"

namespace adcue::cli {
namespace {

namespace fs = std::filesystem;

void reject_unknown(const nlohmann::json& j, const std::set<std::string>& known, const std::string& where) {
  if (!j.is_object()) throw Error(ErrorKind::kSchema, where + ": expected an object");
  for (const auto& [key, _] : j.items()) {
    if (!known.count(key)) throw Error(ErrorKind::kSchema, where + ": unknown key '" + key + "'");
  }
}

template <typename T>
void read(const nlohmann::json& j, const char* key, T& dst) {
  if (!j.contains(key)) return;
  try {
    dst = j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kSchema, std::string("config key '") + key + "': " + e.what());
  }
}

fs::path resolve(const fs::path& p, const fs::path& base) {
  if (p.empty() || p.is_absolute()) return p;
  return base / p;
}

std::uint64_t parse_u64(std::string_view s) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "bad seed '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

std::vector<std::uint64_t> parse_seed_list(std::string_view text) {
  std::vector<std::uint64_t> seeds;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string_view part = text.substr(pos, comma - pos);
    if (const auto dots = part.find(".."); dots != std::string_view::npos) {
      const auto lo = parse_u64(part.substr(0, dots));
      const auto hi = parse_u64(part.substr(dots + 2));
      if (hi < lo) throw Error(ErrorKind::kInvalidArgument, "reversed seed range '" + std::string(part) + "'");
      for (auto s = lo; s <= hi; ++s) seeds.push_back(s);
    } else {
      seeds.push_back(parse_u64(part));
    }
    pos = comma + 1;
  }
  if (seeds.empty()) throw Error(ErrorKind::kInvalidArgument, "empty seed list");
  return seeds;
}

nlohmann::ordered_json speech_config_to_json(const SpeechConfig& c) {
  return {{"f0_min", c.f0_min},
          {"f0_max", c.f0_max},
          {"frame_s", c.frame_s},
          {"hop_s", c.hop_s},
          {"voicing_threshold", c.voicing_threshold},
          {"gate_window_s", c.gate_window_s},
          {"silence_percentile", c.silence_percentile},
          {"silence_margin_db", c.silence_margin_db},
          {"flat_range_db", c.flat_range_db},
          {"flat_silence_db", c.flat_silence_db},
          {"min_pause_s", c.min_pause_s},
          {"pre_emphasis", c.pre_emphasis},
          {"max_formant_bandwidth", c.max_formant_bandwidth},
          {"glottal_chunk_s", c.glottal_chunk_s},
          {"integrator_leak", c.integrator_leak}};
}

SpeechConfig speech_config_from_json(const nlohmann::json& j) {
  SpeechConfig c;
  reject_unknown(j, {"f0_min", "f0_max", "frame_s", "hop_s", "voicing_threshold", "gate_window_s",
                     "silence_percentile", "silence_margin_db", "flat_range_db", "flat_silence_db", "min_pause_s",
                     "pre_emphasis", "max_formant_bandwidth", "glottal_chunk_s", "integrator_leak"},
                 "speech");
  read(j, "f0_min", c.f0_min);
  read(j, "f0_max", c.f0_max);
  read(j, "frame_s", c.frame_s);
  read(j, "hop_s", c.hop_s);
  read(j, "voicing_threshold", c.voicing_threshold);
  read(j, "gate_window_s", c.gate_window_s);
  read(j, "silence_percentile", c.silence_percentile);
  read(j, "silence_margin_db", c.silence_margin_db);
  read(j, "flat_range_db", c.flat_range_db);
  read(j, "flat_silence_db", c.flat_silence_db);
  read(j, "min_pause_s", c.min_pause_s);
  read(j, "pre_emphasis", c.pre_emphasis);
  read(j, "max_formant_bandwidth", c.max_formant_bandwidth);
  read(j, "glottal_chunk_s", c.glottal_chunk_s);
  read(j, "integrator_leak", c.integrator_leak);
  return c;
}

nlohmann::ordered_json synthetic_spec_to_json(const SyntheticSpec& s) {
  return {{"train_per_class", s.train_per_class},
          {"test_per_class", s.test_per_class},
          {"n_min", s.n_min},
          {"n_max", s.n_max},
          {"feature_count", s.feature_count},
          {"embedding_dim", s.embedding_dim},
          {"planted", s.planted},
          {"effect_size", s.effect_size},
          {"noise", s.noise},
          {"signal", s.signal},
          {"seed", s.seed}};
}

SyntheticSpec synthetic_spec_from_json(const nlohmann::json& j) {
  SyntheticSpec s;
  reject_unknown(j, {"train_per_class", "test_per_class", "n_min", "n_max", "feature_count", "embedding_dim",
                     "planted", "effect_size", "noise", "signal", "seed"},
                 "synthetic");
  read(j, "train_per_class", s.train_per_class);
  read(j, "test_per_class", s.test_per_class);
  read(j, "n_min", s.n_min);
  read(j, "n_max", s.n_max);
  read(j, "feature_count", s.feature_count);
  read(j, "embedding_dim", s.embedding_dim);
  read(j, "planted", s.planted);
  read(j, "effect_size", s.effect_size);
  read(j, "noise", s.noise);
  read(j, "signal", s.signal);
  read(j, "seed", s.seed);
  return s;
}

void RunConfig::validate() const {
  if (conditions.empty()) throw Error(ErrorKind::kInvalidArgument, "config: at least one condition is required");
  if (features != "text" && features != "speech") {
    throw Error(ErrorKind::kInvalidArgument, "config: features must be \"text\" or \"speech\", got \"" + features + "\"");
  }
  if (top_k == 0) throw Error(ErrorKind::kInvalidArgument, "config: top_k must be positive");
  train.validate();
  adcue::validate(synthetic);
}

nlohmann::ordered_json RunConfig::to_json() const {
  nlohmann::ordered_json j;
  j["manifest"] = manifest.generic_string();
  j["conditions"] = conditions;
  j["speaker"] = speaker;
  j["text"] = {{"ttr_window", text.ttr_window}, {"mtld_threshold", text.mtld_threshold}};
  j["mrc"] = mrc.generic_string();
  j["speech"] = speech_config_to_json(speech);
  j["train"] = train.to_json();
  j["features"] = features;
  j["out"] = out.generic_string();
  j["synthetic"] = synthetic_spec_to_json(synthetic);
  j["wer_reference"] = wer_reference;
  j["interpret_conditions"] = interpret_conditions;
  j["top_k"] = top_k;
  return j;
}

RunConfig run_config_from_json(const nlohmann::json& j, const fs::path& base_dir) {
  reject_unknown(j, {"manifest", "conditions", "speaker", "text", "mrc", "speech", "train", "features", "out",
                     "synthetic", "wer_reference", "interpret_conditions", "top_k"},
                 "config");
  RunConfig c;
  std::string path;
  if (j.contains("manifest")) {
    read(j, "manifest", path);
    c.manifest = resolve(path, base_dir);
  }
  read(j, "conditions", c.conditions);
  read(j, "speaker", c.speaker);
  if (j.contains("text")) {
    const auto& t = j.at("text");
    reject_unknown(t, {"ttr_window", "mtld_threshold"}, "text");
    read(t, "ttr_window", c.text.ttr_window);
    read(t, "mtld_threshold", c.text.mtld_threshold);
  }
  if (j.contains("mrc")) {
    read(j, "mrc", path);
    c.mrc = resolve(path, base_dir);
  }
  if (j.contains("speech")) c.speech = speech_config_from_json(j.at("speech"));
  if (j.contains("train")) c.train = TrainConfig::from_json(j.at("train"));
  read(j, "features", c.features);
  if (j.contains("out")) {
    read(j, "out", path);
    c.out = resolve(path, base_dir);
  }
  if (j.contains("synthetic")) c.synthetic = synthetic_spec_from_json(j.at("synthetic"));
  read(j, "wer_reference", c.wer_reference);
  read(j, "interpret_conditions", c.interpret_conditions);
  read(j, "top_k", c.top_k);
  return c;
}

RunConfig load_run_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kMissingFile, "config file not found: " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(ss.str());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kSchema, "config " + path.string() + ": " + e.what());
  }
  return run_config_from_json(j, path.parent_path());
}

}  // namespace adcue::cli
