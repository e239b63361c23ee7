#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace adcue {

// One sample per row, keyed by sample_id, columns in canonical feature
// order. CSV layout: header `sample_id,<name>,...`, values printed with 17
// significant digits so a write/read cycle is exact.
struct FeatureTable {
  std::vector<std::string> names;
  std::vector<std::string> sample_ids;
  std::vector<std::vector<double>> rows;

  void add(std::string sample_id, std::vector<double> values);
  std::optional<std::span<const double>> find(std::string_view sample_id) const;
  std::size_t size() const { return rows.size(); }
};

void write_feature_csv(const FeatureTable& table, const std::filesystem::path& path);
std::string format_feature_csv(const FeatureTable& table);
FeatureTable read_feature_csv(const std::filesystem::path& path);

}  // namespace adcue
