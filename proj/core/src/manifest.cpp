#include "adcue/manifest.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "adcue/error.hpp"

namespace adcue {

namespace fs = std::filesystem;
using nlohmann::json;

std::string_view to_string(Label label) { return label == Label::kAD ? "AD" : "HC"; }
std::string_view to_string(Split split) { return split == Split::kTrain ? "train" : "test"; }

Label parse_label(std::string_view text) {
  if (text == "AD") return Label::kAD;
  if (text == "HC") return Label::kHC;
  throw Error(ErrorKind::kSchema, "label must be AD or HC, got '" + std::string(text) + "'");
}

Split parse_split(std::string_view text) {
  if (text == "train") return Split::kTrain;
  if (text == "test") return Split::kTest;
  throw Error(ErrorKind::kSchema, "split must be train or test, got '" + std::string(text) + "'");
}

std::vector<const ManifestEntry*> DatasetManifest::for_condition(std::string_view condition) const {
  std::vector<const ManifestEntry*> out;
  for (const auto& e : entries) {
    if (e.condition == condition) out.push_back(&e);
  }
  return out;
}

std::vector<std::string> DatasetManifest::conditions() const {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& e : entries) {
    if (seen.insert(e.condition).second) out.push_back(e.condition);
  }
  return out;
}

namespace {

std::string require_string(const json& obj, const char* key, std::size_t index) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) {
    throw Error(ErrorKind::kSchema,
                "entry " + std::to_string(index) + ": missing string field '" + key + "'");
  }
  return it->get<std::string>();
}

std::optional<fs::path> optional_path(const json& obj, const char* key, std::size_t index,
                                      const fs::path& base_dir) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) {
    throw Error(ErrorKind::kSchema,
                "entry " + std::to_string(index) + ": field '" + key + "' must be a string");
  }
  fs::path p(it->get<std::string>());
  if (p.is_relative()) p = base_dir / p;
  return p.lexically_normal();
}

}  // namespace

DatasetManifest parse_manifest(std::string_view json_text, const fs::path& base_dir,
                               bool check_paths) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::kSchema, std::string("manifest is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("entries") || !doc["entries"].is_array()) {
    throw Error(ErrorKind::kSchema, "manifest must be an object with an 'entries' array");
  }

  DatasetManifest manifest;
  std::set<std::pair<std::string, std::string>> keys;
  std::size_t index = 0;
  for (const auto& item : doc["entries"]) {
    if (!item.is_object()) {
      throw Error(ErrorKind::kSchema, "entry " + std::to_string(index) + " is not an object");
    }
    ManifestEntry e;
    e.sample_id = require_string(item, "sample_id", index);
    e.label = parse_label(require_string(item, "label", index));
    e.condition = require_string(item, "condition", index);
    e.split = parse_split(require_string(item, "split", index));
    e.transcript_path = optional_path(item, "transcript_path", index, base_dir);
    e.audio_path = optional_path(item, "audio_path", index, base_dir);
    e.embedding_path = optional_path(item, "embedding_path", index, base_dir);
    if (e.sample_id.empty()) {
      throw Error(ErrorKind::kSchema, "entry " + std::to_string(index) + ": empty sample_id");
    }
    if (!keys.emplace(e.sample_id, e.condition).second) {
      throw Error(ErrorKind::kDuplicateKey,
                  "duplicate sample_id '" + e.sample_id + "' in condition '" + e.condition + "'");
    }
    if (check_paths) {
      for (const auto* p : {&e.transcript_path, &e.audio_path, &e.embedding_path}) {
        std::error_code ec;
        if (*p && !fs::exists(**p, ec)) {
          throw Error(ErrorKind::kPath, "entry '" + e.sample_id + "' (" + e.condition +
                                            "): path does not exist: " + (*p)->string());
        }
      }
    }
    manifest.entries.push_back(std::move(e));
    ++index;
  }
  return manifest;
}

DatasetManifest load_manifest(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kMissingFile, "cannot open manifest " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_manifest(buf.str(), path.parent_path());
}

void save_manifest(const DatasetManifest& manifest, const fs::path& path) {
  const fs::path base = path.parent_path().empty() ? fs::path(".") : path.parent_path();
  auto rel = [&](const fs::path& p) {
    std::error_code ec;
    auto r = fs::relative(p, base, ec);
    return (ec || r.empty()) ? p.generic_string() : r.generic_string();
  };
  json entries = json::array();
  for (const auto& e : manifest.entries) {
    json item = {{"sample_id", e.sample_id},
                 {"label", std::string(to_string(e.label))},
                 {"condition", e.condition},
                 {"split", std::string(to_string(e.split))}};
    if (e.transcript_path) item["transcript_path"] = rel(*e.transcript_path);
    if (e.audio_path) item["audio_path"] = rel(*e.audio_path);
    if (e.embedding_path) item["embedding_path"] = rel(*e.embedding_path);
    entries.push_back(std::move(item));
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::kIo, "cannot write manifest " + path.string());
  out << json{{"entries", entries}}.dump(2) << "\n";
}

}  // namespace adcue
