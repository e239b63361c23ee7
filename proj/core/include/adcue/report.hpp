#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "adcue/interpret.hpp"

namespace adcue {

struct NamedSalience {
  std::string condition;
  std::vector<double> values;
};

// Header = feature names, one row per embedding dimension, %.17g values.
void write_heatmap_csv(const std::filesystem::path& path, const Tensor2& mean_attention,
                       std::span<const std::string> names);

// Rows are averaged into at most max_rows bands so the file stays small.
void write_heatmap_svg(const std::filesystem::path& path, const Tensor2& mean_attention,
                       std::span<const std::string> names, std::size_t max_rows = 256);

// Columns: index, feature, then one column per condition.
void write_salience_csv(const std::filesystem::path& path, std::span<const std::string> names,
                        std::span<const NamedSalience> series);
void write_salience_svg(const std::filesystem::path& path, std::span<const std::string> names,
                        std::span<const NamedSalience> series);

struct ReportInputs {
  std::vector<std::string> names;
  std::vector<NamedSalience> salience;       // at least one condition
  const Tensor2* mean_attention = nullptr;   // heatmap source for the first condition
  std::size_t used_samples = 0;
  std::size_t total_samples = 0;
  std::optional<ConditionComparison> comparison;
  std::vector<FeatureShift> shifts;
  std::size_t top_k = 5;
  nlohmann::json extra = nlohmann::json::object();
};

struct ReportPaths {
  std::filesystem::path heatmap_csv;
  std::filesystem::path heatmap_svg;
  std::filesystem::path salience_csv;
  std::filesystem::path salience_svg;
  std::filesystem::path summary_json;
};

ReportPaths default_report_paths(const std::filesystem::path& dir);

nlohmann::json report_summary(const ReportInputs& in);

// Writes every artifact; the heatmap pair is skipped when no matrix is given.
void emit_report(const ReportInputs& in, const ReportPaths& paths);

}  // namespace adcue
