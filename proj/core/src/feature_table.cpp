#include "adcue/feature_table.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "adcue/error.hpp"
#include "text_util.hpp"

namespace adcue {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(detail::trim(field));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void FeatureTable::add(std::string sample_id, std::vector<double> values) {
  if (values.size() != names.size()) {
    throw Error(ErrorKind::kShape, "feature row for '" + sample_id + "' has " +
                                       std::to_string(values.size()) + " values, expected " +
                                       std::to_string(names.size()));
  }
  sample_ids.push_back(std::move(sample_id));
  rows.push_back(std::move(values));
}

std::optional<std::span<const double>> FeatureTable::find(std::string_view sample_id) const {
  for (std::size_t i = 0; i < sample_ids.size(); ++i) {
    if (sample_ids[i] == sample_id) return std::span<const double>(rows[i]);
  }
  return std::nullopt;
}

std::string format_feature_csv(const FeatureTable& table) {
  std::string out = "sample_id";
  for (const auto& n : table.names) out += "," + n;
  out += "\n";
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    out += table.sample_ids[r];
    for (double v : table.rows[r]) out += "," + format_double(v);
    out += "\n";
  }
  return out;
}

void write_feature_csv(const FeatureTable& table, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIo, "cannot write feature CSV " + path.string());
  out << format_feature_csv(table);
  if (!out) throw Error(ErrorKind::kIo, "failed writing " + path.string());
}

FeatureTable read_feature_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kMissingFile, "cannot open feature CSV " + path.string());
  FeatureTable table;
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::kSchema, path.string() + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  auto header = split_csv_line(line);
  if (header.empty() || header.front() != "sample_id") {
    throw Error(ErrorKind::kSchema, path.string() + ": header must start with sample_id");
  }
  table.names.assign(header.begin() + 1, header.end());
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (detail::trim(line).empty()) continue;
    auto fields = split_csv_line(line);
    if (fields.size() != header.size()) {
      throw Error(ErrorKind::kSchema, path.string() + ":" + std::to_string(line_no) + ": expected " +
                                          std::to_string(header.size()) + " fields");
    }
    std::vector<double> values;
    values.reserve(fields.size() - 1);
    for (std::size_t i = 1; i < fields.size(); ++i) {
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(fields[i].data(), fields[i].data() + fields[i].size(), v);
      if (ec != std::errc() || ptr != fields[i].data() + fields[i].size()) {
        throw Error(ErrorKind::kSchema, path.string() + ":" + std::to_string(line_no) +
                                            ": non-numeric value '" + fields[i] + "'");
      }
      values.push_back(v);
    }
    table.add(fields.front(), std::move(values));
  }
  return table;
}

}  // namespace adcue
