#include "adcue_cli/commands.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "adcue/assets.hpp"
#include "adcue/audio.hpp"
#include "adcue/checkpoint.hpp"
#include "adcue/corpus.hpp"
#include "adcue/diagnostics.hpp"
#include "adcue/embedding_store.hpp"
#include "adcue/error.hpp"
#include "adcue/feature_table.hpp"
#include "adcue/interpret.hpp"
#include "adcue/lexicon.hpp"
#include "adcue/manifest.hpp"
#include "adcue/pos_tagger.hpp"
#include "adcue/report.hpp"
#include "adcue/speech_features.hpp"
#include "adcue/synthetic.hpp"
#include "adcue/text_features.hpp"
#include "adcue/training.hpp"
#include "adcue/wer.hpp"
#include "adcue_cli/status.hpp"

namespace adcue::cli {
namespace {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kMissingFile, "cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path& path, const std::string& text) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
  out << text;
  if (!out.flush()) throw Error(ErrorKind::kIo, "write failed: " + path.string());
}

Error missing(const fs::path& path, const std::string& producer, const std::string& condition) {
  return Error(ErrorKind::kMissingPrerequisite, "missing " + path.string() + "; run `adcue " + producer +
                                                    " --condition " + condition + "` first");
}

void require(const fs::path& path, const std::string& producer, const std::string& condition) {
  if (!fs::exists(path)) throw missing(path, producer, condition);
}

const std::string& primary_condition(const RunConfig& c) { return c.conditions.front(); }

ojson diagnostics_json(const Diagnostics& d) {
  ojson j = ojson::object();
  for (const auto& [k, n] : d.tally()) j[k] = n;
  return j;
}

bool looks_like_chat(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && (line[0] == '*' || line[0] == '@')) return true;
  }
  return false;
}

// tokens/<condition>.jsonl
struct TokenRecord {
  std::string sample_id;
  TokenSequence seq;
};

std::string token_line(const TokenRecord& r) {
  ojson j;
  j["sample_id"] = r.sample_id;
  j["tokens"] = r.seq.tokens;
  ojson spans = ojson::array();
  for (const auto& s : r.seq.sentence_bounds) spans.push_back({s.begin, s.end});
  j["sentences"] = spans;
  return j.dump();
}

std::vector<TokenRecord> read_tokens(const fs::path& path) {
  std::vector<TokenRecord> out;
  std::istringstream in(read_text(path));
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      TokenRecord r;
      r.sample_id = j.at("sample_id").get<std::string>();
      r.seq.tokens = j.at("tokens").get<std::vector<std::string>>();
      for (const auto& s : j.at("sentences")) r.seq.sentence_bounds.push_back({s.at(0), s.at(1)});
      out.push_back(std::move(r));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::kSchema, path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

DatasetManifest load_manifest_for(const RunConfig& c, const std::string& condition, StatusRecord& status) {
  const fs::path path = manifest_path(c, condition);
  if (path.empty()) {
    throw Error(ErrorKind::kMissingPrerequisite, "no manifest configured; set \"manifest\" in the config");
  }
  if (condition == "synthetic" && c.manifest.empty()) require(path, "synth-data", condition);
  auto manifest = load_manifest(path);
  status.add_input(path);
  return manifest;
}

std::vector<BoundSample> bind_condition(const RunConfig& c, const std::string& condition, StatusRecord& status,
                                        Diagnostics* diag) {
  const fs::path table_path = feature_path(c, c.features, condition);
  require(table_path, condition == "synthetic" ? "synth-data" : c.features + "-feats", condition);
  const auto manifest = load_manifest_for(c, condition, status);
  const auto table = read_feature_csv(table_path);
  status.add_input(table_path);
  return bind_dataset(manifest, condition, table, diag);
}

struct LoadedModel {
  std::uint64_t seed = 0;
  std::unique_ptr<Classifier> model;
  Standardizer standardizer;
  ModelKind kind = ModelKind::kCrossAttention;
  std::vector<std::string> feature_names;
};

LoadedModel load_model(const fs::path& path) {
  auto ckpt = load_checkpoint(path);
  LoadedModel m;
  const auto& meta = ckpt.meta;
  try {
    m.seed = meta.at("seed").get<std::uint64_t>();
    m.kind = parse_model_kind(meta.at("train").at("model").get<std::string>());
    m.standardizer = Standardizer::from_json(meta.at("standardizer"));
    m.feature_names = meta.at("feature_names").get<std::vector<std::string>>();
    Rng rng(m.seed);
    m.model = make_classifier(meta.at("architecture"), rng);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kSchema, "checkpoint " + path.string() + " metadata: " + e.what());
  }
  restore_params(m.model->params(), ckpt.params);
  return m;
}

nlohmann::json read_json(const fs::path& path) {
  try {
    return nlohmann::json::parse(read_text(path));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kSchema, path.string() + ": " + e.what());
  }
}

fs::path checkpoint_path(const RunConfig& c, const std::string& condition, std::uint64_t seed) {
  return model_dir(c, condition) / ("seed-" + std::to_string(seed) + ".ckpt");
}

std::vector<Example> test_examples(std::span<const BoundSample> samples, const LoadedModel& m) {
  std::vector<Example> out;
  for (const auto& s : samples) {
    if (s.split == Split::kTest) out.push_back(make_example(s, m.standardizer, m.kind));
  }
  return out;
}

}  // namespace

RunConfig apply_overrides(RunConfig config, const Overrides& o) {
  if (o.out) config.out = *o.out;
  if (o.seeds) config.train.seeds = *o.seeds;
  if (o.condition) config.conditions = {*o.condition};
  config.validate();
  return config;
}

std::string file_tag(const std::string& condition) {
  std::string out;
  for (char ch : condition) {
    const bool keep = std::isalnum(static_cast<unsigned char>(ch)) || ch == '-' || ch == '.' || ch == '_';
    out += keep ? ch : '_';
  }
  return out.empty() ? "_" : out;
}

fs::path tokens_path(const RunConfig& c, const std::string& condition) {
  return c.out / "tokens" / (file_tag(condition) + ".jsonl");
}

fs::path feature_path(const RunConfig& c, const std::string& kind, const std::string& condition) {
  return c.out / "features" / (kind + "_" + file_tag(condition) + ".csv");
}

fs::path model_dir(const RunConfig& c, const std::string& condition) { return c.out / "models" / file_tag(condition); }

fs::path manifest_path(const RunConfig& c, const std::string& condition) {
  if (!c.manifest.empty()) return c.manifest;
  if (condition == "synthetic") return c.out / "synthetic" / "manifest.json";
  return {};
}

fs::path cmd_parse_chat(const RunConfig& c, std::ostream& log) {
  StatusRecord status("parse-chat", c.out);
  status.set_config(c.to_json());
  const std::string& cond = primary_condition(c);
  const auto manifest = load_manifest_for(c, cond, status);
  Diagnostics diag;
  std::string body;
  std::size_t count = 0;
  for (const auto* e : manifest.for_condition(cond)) {
    if (!e->transcript_path) continue;
    const std::string raw = read_text(*e->transcript_path);
    status.add_input(*e->transcript_path);
    TokenRecord r;
    r.sample_id = e->sample_id;
    if (looks_like_chat(raw)) {
      r.seq = normalize_tokens(parse_chat(raw, e->sample_id), c.speaker, &diag);
    } else {
      r.seq = normalize_text(raw, &diag);
    }
    if (r.seq.empty()) diag.note("empty-transcript", e->sample_id);
    body += token_line(r) + "\n";
    ++count;
  }
  if (count == 0) {
    throw Error(ErrorKind::kMissingPrerequisite,
                "manifest has no transcripts for condition '" + cond + "'; add transcript_path entries");
  }
  const fs::path out = tokens_path(c, cond);
  write_text(out, body);
  status.add_output(out);
  status.extra()["samples"] = count;
  status.extra()["diagnostics"] = diagnostics_json(diag);
  log << "parse-chat: " << count << " transcripts -> " << out.string() << '\n';
  return status.write("parse-chat__" + file_tag(cond));
}

fs::path cmd_text_feats(const RunConfig& c, std::ostream& log) {
  StatusRecord status("text-feats", c.out);
  status.set_config(c.to_json());
  const std::string& cond = primary_condition(c);
  const fs::path in = tokens_path(c, cond);
  require(in, "parse-chat", cond);
  const auto records = read_tokens(in);
  status.add_input(in);

  const fs::path mrc = c.mrc.empty() ? asset_dir() / "mrc_sample.dct" : c.mrc;
  const auto lexicon = load_mrc(mrc);
  status.add_input(mrc);
  const RuleTagger tagger;

  FeatureTable table;
  for (auto n : text_feature_names()) table.names.emplace_back(n);
  Diagnostics diag;
  std::vector<std::string> failed;
  for (const auto& r : records) {
    try {
      const auto v = extract_text_features(r.seq, tagger, lexicon, c.text, &diag);
      table.add(r.sample_id, {v.values.begin(), v.values.end()});
    } catch (const Error& e) {
      failed.push_back(r.sample_id + ": " + e.what());
    }
  }
  const fs::path out = feature_path(c, "text", cond);
  write_text(out, format_feature_csv(table));
  status.add_output(out);
  status.extra()["samples"] = table.size();
  status.extra()["failed"] = failed;
  status.extra()["diagnostics"] = diagnostics_json(diag);
  log << "text-feats: " << table.size() << " samples -> " << out.string() << '\n';
  const fs::path written = status.write("text-feats__" + file_tag(cond));
  if (!failed.empty()) {
    throw Error(ErrorKind::kInvalidArgument, std::to_string(failed.size()) + " sample(s) failed; first: " + failed[0]);
  }
  return written;
}

fs::path cmd_speech_feats(const RunConfig& c, std::ostream& log) {
  StatusRecord status("speech-feats", c.out);
  status.set_config(c.to_json());
  const std::string& cond = primary_condition(c);
  const auto manifest = load_manifest_for(c, cond, status);
  FeatureTable table;
  for (auto n : speech_feature_names()) table.names.emplace_back(n);
  Diagnostics diag;
  std::vector<std::string> failed;
  std::size_t seen = 0;
  for (const auto* e : manifest.for_condition(cond)) {
    if (!e->audio_path) continue;
    ++seen;
    try {
      const auto audio = read_wav(*e->audio_path);
      status.add_input(*e->audio_path);
      const auto v = extract_speech_features(audio, c.speech, &diag);
      table.add(e->sample_id, {v.values.begin(), v.values.end()});
    } catch (const Error& err) {
      failed.push_back(e->sample_id + ": " + err.what());
    }
  }
  if (seen == 0) {
    throw Error(ErrorKind::kMissingPrerequisite,
                "manifest has no audio for condition '" + cond + "'; add audio_path entries");
  }
  const fs::path out = feature_path(c, "speech", cond);
  write_text(out, format_feature_csv(table));
  status.add_output(out);
  status.extra()["samples"] = table.size();
  status.extra()["failed"] = failed;
  status.extra()["diagnostics"] = diagnostics_json(diag);
  log << "speech-feats: " << table.size() << " samples -> " << out.string() << '\n';
  const fs::path written = status.write("speech-feats__" + file_tag(cond));
  if (!failed.empty()) {
    throw Error(ErrorKind::kInvalidArgument, std::to_string(failed.size()) + " sample(s) failed; first: " + failed[0]);
  }
  return written;
}

fs::path cmd_wer(const RunConfig& c, std::ostream& log) {
  StatusRecord status("wer", c.out);
  status.set_config(c.to_json());
  const std::string& ref_cond = c.wer_reference;
  const fs::path ref_path = tokens_path(c, ref_cond);
  require(ref_path, "parse-chat", ref_cond);
  const auto refs = read_tokens(ref_path);
  status.add_input(ref_path);
  std::map<std::string, const TokenSequence*> by_id;
  for (const auto& r : refs) by_id[r.sample_id] = &r.seq;

  std::string summary = "condition,reference,pairs,missing,mean_wer,pooled_wer\n";
  ojson details = ojson::array();
  for (const auto& hyp_cond : c.conditions) {
    if (hyp_cond == ref_cond) continue;
    const fs::path hyp_path = tokens_path(c, hyp_cond);
    require(hyp_path, "parse-chat", hyp_cond);
    const auto hyps = read_tokens(hyp_path);
    status.add_input(hyp_path);
    std::string csv = "sample_id,substitutions,deletions,insertions,ref_len,wer\n";
    std::vector<WerBreakdown> pairs;
    std::vector<std::string> missing_ids;
    char buf[64];
    for (const auto& h : hyps) {
      const auto it = by_id.find(h.sample_id);
      if (it == by_id.end() || it->second->empty()) {
        missing_ids.push_back(h.sample_id);
        continue;
      }
      const auto w = wer(it->second->tokens, h.seq.tokens);
      pairs.push_back(w);
      std::snprintf(buf, sizeof buf, "%.17g", w.wer);
      csv += h.sample_id + "," + std::to_string(w.substitutions) + "," + std::to_string(w.deletions) + "," +
             std::to_string(w.insertions) + "," + std::to_string(w.ref_len) + "," + buf + "\n";
    }
    if (pairs.empty()) {
      throw Error(ErrorKind::kMissingPrerequisite,
                  "no sample of '" + hyp_cond + "' has a reference in '" + ref_cond + "'");
    }
    const fs::path out = c.out / "wer" / (file_tag(hyp_cond) + ".csv");
    write_text(out, csv);
    status.add_output(out);
    const double mean = mean_wer(pairs), pooled = pooled_wer(pairs);
    char line[256];
    std::snprintf(line, sizeof line, ",%zu,%zu,%.17g,%.17g\n", pairs.size(), missing_ids.size(), mean, pooled);
    summary += hyp_cond + "," + ref_cond + line;
    details.push_back({{"condition", hyp_cond}, {"pairs", pairs.size()}, {"missing", missing_ids}});
    log << "wer: " << hyp_cond << " vs " << ref_cond << " mean " << mean << " pooled " << pooled << " over "
        << pairs.size() << " pairs\n";
  }
  if (details.empty()) {
    throw Error(ErrorKind::kInvalidArgument,
                "no hypothesis condition; pass --condition <tag> different from the reference '" + ref_cond + "'");
  }
  const fs::path out = c.out / "wer" / "summary.csv";
  write_text(out, summary);
  status.add_output(out);
  status.extra()["conditions"] = details;
  return status.write("wer__" + file_tag(c.conditions.front()));
}

fs::path cmd_train(const RunConfig& c, std::ostream& log) {
  StatusRecord status("train", c.out);
  status.set_config(c.to_json());
  const std::string& cond = primary_condition(c);
  Diagnostics diag;
  const auto samples = bind_condition(c, cond, status, &diag);
  const auto data = prepare_data(samples, c.train.model);
  if (data.train.empty() || data.test.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "condition '" + cond + "' needs both train and test samples");
  }
  const auto table = read_feature_csv(feature_path(c, c.features, cond));

  const fs::path dir = model_dir(c, cond);
  fs::create_directories(dir);
  std::ostringstream train_log;
  const auto result = multi_seed_run(c.train, data, &train_log);

  ojson seeds = ojson::array();
  for (const auto& run : result.runs) {
    nlohmann::json meta;
    meta["seed"] = run.seed;
    meta["condition"] = cond;
    meta["features"] = c.features;
    meta["feature_names"] = table.names;
    meta["architecture"] = run.result.model->architecture();
    meta["train"] = c.train.to_json();
    meta["standardizer"] = data.standardizer.to_json();
    const fs::path ckpt = checkpoint_path(c, cond, run.seed);
    save_checkpoint(ckpt, run.result.model->params(), meta);
    status.add_output(ckpt);
    seeds.push_back({{"seed", run.seed}, {"accuracy", run.evaluation.accuracy}});
    log << "train: seed " << run.seed << " test accuracy " << run.evaluation.accuracy << '\n';
  }
  ojson results;
  results["condition"] = cond;
  results["model"] = std::string(to_string(c.train.model));
  results["features"] = c.features;
  results["train_samples"] = data.train.size();
  results["test_samples"] = data.test.size();
  results["seeds"] = seeds;
  results["mean_accuracy"] = result.mean_accuracy;
  results["std_accuracy"] = result.std_accuracy;
  results["best_seed"] = result.runs[result.best].seed;
  const fs::path results_path = dir / "results.json";
  write_text(results_path, results.dump(2) + "\n");
  status.add_output(results_path);
  const fs::path log_path = dir / "train_log.jsonl";
  write_text(log_path, train_log.str());
  status.add_volatile_output(log_path);
  status.extra()["mean_accuracy"] = result.mean_accuracy;
  status.extra()["best_seed"] = result.runs[result.best].seed;
  status.extra()["diagnostics"] = diagnostics_json(diag);
  log << "train: mean accuracy " << result.mean_accuracy << " (std " << result.std_accuracy << "), best seed "
      << result.runs[result.best].seed << '\n';
  return status.write("train__" + file_tag(cond));
}

fs::path cmd_evaluate(const RunConfig& c, std::ostream& log) {
  StatusRecord status("evaluate", c.out);
  status.set_config(c.to_json());
  // Models come from the first condition; they are scored on every listed
  // condition (e.g. a model trained on manual transcripts scored on ASR).
  const std::string& model_cond = primary_condition(c);
  const fs::path results_path = model_dir(c, model_cond) / "results.json";
  require(results_path, "train", model_cond);
  const auto results = read_json(results_path);
  status.add_input(results_path);

  std::vector<LoadedModel> models;
  for (const auto& s : results.at("seeds")) {
    const auto seed = s.at("seed").get<std::uint64_t>();
    const fs::path ckpt = checkpoint_path(c, model_cond, seed);
    require(ckpt, "train", model_cond);
    models.push_back(load_model(ckpt));
    status.add_input(ckpt);
  }
  ojson report;
  report["model_condition"] = model_cond;
  ojson evals = ojson::array();
  for (const auto& cond : c.conditions) {
    const auto samples = bind_condition(c, cond, status, nullptr);
    std::vector<double> accs;
    ojson per_seed = ojson::array();
    for (const auto& m : models) {
      const auto test = test_examples(samples, m);
      if (test.empty()) throw Error(ErrorKind::kInvalidArgument, "condition '" + cond + "' has no test samples");
      const auto ev = evaluate(*m.model, test);
      accs.push_back(ev.accuracy);
      ojson preds = ojson::object();
      for (std::size_t i = 0; i < test.size(); ++i) {
        preds[test[i].sample_id] = std::string(to_string(static_cast<Label>(ev.predictions[i])));
      }
      per_seed.push_back({{"seed", m.seed}, {"accuracy", ev.accuracy}, {"predictions", preds}});
    }
    double mean = 0.0;
    for (double a : accs) mean += a;
    mean /= static_cast<double>(accs.size());
    evals.push_back({{"condition", cond}, {"mean_accuracy", mean}, {"seeds", per_seed}});
    log << "evaluate: " << model_cond << " model on " << cond << ": mean accuracy " << mean << '\n';
  }
  report["evaluations"] = evals;
  const fs::path out = c.out / "eval" / (file_tag(model_cond) + ".json");
  write_text(out, report.dump(2) + "\n");
  status.add_output(out);
  return status.write("evaluate__" + file_tag(model_cond));
}

fs::path cmd_interpret(const RunConfig& c, std::ostream& log) {
  StatusRecord status("interpret", c.out);
  status.set_config(c.to_json());
  const std::string& model_cond = primary_condition(c);
  const fs::path results_path = model_dir(c, model_cond) / "results.json";
  require(results_path, "train", model_cond);
  const auto results = read_json(results_path);
  status.add_input(results_path);
  const auto best_seed = results.at("best_seed").get<std::uint64_t>();
  const fs::path ckpt = checkpoint_path(c, model_cond, best_seed);
  require(ckpt, "train", model_cond);
  const auto loaded = load_model(ckpt);
  status.add_input(ckpt);
  const auto* model = dynamic_cast<const CrossAttnModel*>(loaded.model.get());
  if (!model) {
    throw Error(ErrorKind::kInvalidArgument,
                "interpret needs a cross-attention model; '" + model_cond + "' was trained as " +
                    std::string(to_string(loaded.kind)));
  }

  std::vector<std::string> conds = c.interpret_conditions.empty() ? std::vector<std::string>{model_cond}
                                                                   : c.interpret_conditions;
  ReportInputs in;
  in.names = loaded.feature_names;
  in.top_k = c.top_k;
  std::vector<MeanAttention> means;
  std::vector<std::vector<BoundSample>> bound;
  for (const auto& cond : conds) {
    bound.push_back(bind_condition(c, cond, status, nullptr));
    const auto test = test_examples(bound.back(), loaded);
    means.push_back(collect_mean_attention(*model, test));
    in.salience.push_back({cond, feature_salience(means.back().mean)});
    log << "interpret: " << cond << ": " << means.back().used << " of " << means.back().total
        << " test samples predicted correctly\n";
  }
  in.mean_attention = &means.front().mean;
  in.used_samples = means.front().used;
  in.total_samples = means.front().total;

  auto rows_of = [](std::span<const BoundSample> samples, auto keep) {
    std::vector<std::vector<double>> rows;
    for (const auto& s : samples) {
      if (keep(s)) rows.push_back(s.knowledge);
    }
    return rows;
  };
  ojson meta;
  meta["model_condition"] = model_cond;
  meta["best_seed"] = best_seed;
  if (conds.size() >= 2) {
    in.comparison = compare_conditions(in.salience[0].values, in.salience[1].values, in.names);
    const auto a = rows_of(bound[0], [](const BoundSample&) { return true; });
    const auto b = rows_of(bound[1], [](const BoundSample&) { return true; });
    in.shifts = feature_shift_report(a, b, in.names);
    meta["shift_groups"] = {conds[0], conds[1]};
  } else {
    const auto a = rows_of(bound[0], [](const BoundSample& s) { return s.label == Label::kAD; });
    const auto b = rows_of(bound[0], [](const BoundSample& s) { return s.label == Label::kHC; });
    if (a.size() >= 2 && b.size() >= 2) {
      in.shifts = feature_shift_report(a, b, in.names);
      meta["shift_groups"] = {"AD", "HC"};
    }
  }
  // Synthetic runs carry their ground truth next to the manifest.
  const fs::path truth_path = manifest_path(c, model_cond).parent_path() / "ground_truth.json";
  if (!manifest_path(c, model_cond).empty() && fs::exists(truth_path)) {
    const auto truth = read_json(truth_path);
    const auto planted = truth.at("planted").get<std::vector<std::size_t>>();
    const auto top = top_k(in.salience.front().values, c.top_k);
    std::size_t hits = 0;
    for (auto idx : top) hits += std::count(planted.begin(), planted.end(), idx) > 0 ? 1 : 0;
    meta["planted"] = planted;
    meta["planted_in_top_k"] = hits;
    status.add_input(truth_path);
    log << "interpret: " << hits << " of " << planted.size() << " planted features in the top " << c.top_k << '\n';
  }
  in.extra = meta;

  const fs::path dir = c.out / "interpret" / file_tag(model_cond);
  const auto paths = default_report_paths(dir);
  emit_report(in, paths);
  for (const auto& p : {paths.heatmap_csv, paths.heatmap_svg, paths.salience_csv, paths.salience_svg,
                        paths.summary_json}) {
    status.add_output(p);
  }
  for (std::size_t k = 1; k < conds.size(); ++k) {
    const fs::path extra = dir / ("heatmap_" + file_tag(conds[k]) + ".csv");
    write_heatmap_csv(extra, means[k].mean, in.names);
    status.add_output(extra);
  }
  const auto top = top_k(in.salience.front().values, c.top_k);
  log << "interpret: top " << c.top_k << ":";
  for (auto idx : top) log << ' ' << in.names[idx];
  log << '\n';
  return status.write("interpret__" + file_tag(model_cond));
}

fs::path cmd_synth_data(const RunConfig& c, std::ostream& log) {
  StatusRecord status("synth-data", c.out);
  status.set_config(c.to_json());
  const auto data = generate_synthetic(c.synthetic);
  const fs::path dir = c.out / "synthetic";
  write_synthetic(data, dir);
  // The knowledge table also lands where train looks for it.
  const fs::path table = feature_path(c, c.features, "synthetic");
  fs::create_directories(table.parent_path());
  fs::copy_file(dir / "features.csv", table, fs::copy_options::overwrite_existing);
  for (const auto& p : {dir / "manifest.json", dir / "features.csv", dir / "ground_truth.json", table}) {
    status.add_output(p);
  }
  for (const auto& s : data.samples) status.add_output(dir / "embeddings" / (s.sample_id + ".emb"));
  status.extra()["samples"] = data.samples.size();
  log << "synth-data: " << data.samples.size() << " samples -> " << dir.string() << '\n';
  return status.write("synth-data");
}

}  // namespace adcue::cli
