#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace adcue {

// Class index order is fixed: AD = 0, HC = 1 (also the logit order).
enum class Label { kAD = 0, kHC = 1 };
enum class Split { kTrain, kTest };

std::string_view to_string(Label label);
std::string_view to_string(Split split);
Label parse_label(std::string_view text);
Split parse_split(std::string_view text);

struct ManifestEntry {
  std::string sample_id;
  Label label = Label::kAD;
  // "manual", "asr:<model>", "original-speech", "synth:<source>", ...
  std::string condition;
  Split split = Split::kTrain;
  std::optional<std::filesystem::path> transcript_path;
  std::optional<std::filesystem::path> audio_path;
  std::optional<std::filesystem::path> embedding_path;
};

struct DatasetManifest {
  std::vector<ManifestEntry> entries;

  std::vector<const ManifestEntry*> for_condition(std::string_view condition) const;
  std::vector<std::string> conditions() const;
};

// Reads the JSON manifest. Relative paths resolve against the manifest's
// directory and must exist. Error kinds: kMissingFile (manifest absent),
// kSchema (malformed JSON or fields), kDuplicateKey (repeated
// sample_id + condition), kPath (unresolvable referenced file, message names
// the entry).
DatasetManifest load_manifest(const std::filesystem::path& path);

// Same validation from in-memory JSON text.
DatasetManifest parse_manifest(std::string_view json_text, const std::filesystem::path& base_dir,
                               bool check_paths = true);

// Writes paths relative to the manifest's directory where possible.
void save_manifest(const DatasetManifest& manifest, const std::filesystem::path& path);

}  // namespace adcue
