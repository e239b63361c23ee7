#include "adcue/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "adcue/error.hpp"

namespace adcue {
namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string short_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIo, "cannot open for writing: " + path.string());
  out << content;
  out.flush();
  if (!out) throw Error(ErrorKind::kIo, "write failed: " + path.string());
}

void check_names(Eigen::Index cols, std::span<const std::string> names, const char* who) {
  if (static_cast<std::size_t>(cols) != names.size()) {
    throw Error(ErrorKind::kShape, std::string(who) + ": " + std::to_string(cols) + " columns but " +
                                       std::to_string(names.size()) + " names");
  }
}

// White to dark red.
std::string heat_colour(double t) {
  t = std::clamp(t, 0.0, 1.0);
  const int g = static_cast<int>(std::lround(255.0 * (1.0 - t)));
  const int r = static_cast<int>(std::lround(255.0 - 80.0 * t));
  char buf[16];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, g);
  return buf;
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

}  // namespace

void write_heatmap_csv(const std::filesystem::path& path, const Tensor2& a, std::span<const std::string> names) {
  check_names(a.cols(), names, "write_heatmap_csv");
  std::ostringstream os;
  for (std::size_t j = 0; j < names.size(); ++j) os << (j ? "," : "") << csv_field(names[j]);
  os << '\n';
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) os << (j ? "," : "") << num(a(i, j));
    os << '\n';
  }
  write_file(path, os.str());
}

void write_heatmap_svg(const std::filesystem::path& path, const Tensor2& a, std::span<const std::string> names,
                       std::size_t max_rows) {
  check_names(a.cols(), names, "write_heatmap_svg");
  const auto rows = static_cast<std::size_t>(a.rows());
  const auto cols = static_cast<std::size_t>(a.cols());
  const std::size_t bands = std::max<std::size_t>(1, std::min(rows, max_rows));
  Tensor2 banded = Tensor2::Zero(static_cast<Eigen::Index>(bands), a.cols());
  for (std::size_t b = 0; b < bands; ++b) {
    const std::size_t lo = b * rows / bands, hi = std::max(lo + 1, (b + 1) * rows / bands);
    for (std::size_t i = lo; i < hi && i < rows; ++i) banded.row(static_cast<Eigen::Index>(b)) += a.row(static_cast<Eigen::Index>(i));
    banded.row(static_cast<Eigen::Index>(b)) /= static_cast<double>(hi - lo);
  }
  const double lo_v = banded.size() ? banded.minCoeff() : 0.0;
  const double hi_v = banded.size() ? banded.maxCoeff() : 1.0;
  const double span = hi_v > lo_v ? hi_v - lo_v : 1.0;

  const double cell_w = 14.0, cell_h = 2.0, left = 40.0, top = 20.0, bottom = 120.0;
  const double width = left + cell_w * static_cast<double>(cols) + 20.0;
  const double height = top + cell_h * static_cast<double>(bands) + bottom;
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << short_num(width) << "\" height=\""
     << short_num(height) << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << short_num(left) << "\" y=\"14\" font-size=\"11\" font-family=\"sans-serif\">mean attention ("
     << rows << " x " << cols << "), range " << num(lo_v) << " .. " << num(hi_v) << "</text>\n";
  for (std::size_t b = 0; b < bands; ++b) {
    for (std::size_t j = 0; j < cols; ++j) {
      const double v = banded(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(j));
      os << "<rect x=\"" << short_num(left + cell_w * static_cast<double>(j)) << "\" y=\""
         << short_num(top + cell_h * static_cast<double>(b)) << "\" width=\"" << short_num(cell_w) << "\" height=\""
         << short_num(cell_h) << "\" fill=\"" << heat_colour((v - lo_v) / span) << "\"/>\n";
    }
  }
  const double label_y = top + cell_h * static_cast<double>(bands) + 6.0;
  for (std::size_t j = 0; j < cols; ++j) {
    const double x = left + cell_w * (static_cast<double>(j) + 0.5);
    os << "<text x=\"" << short_num(x) << "\" y=\"" << short_num(label_y)
       << "\" font-size=\"8\" font-family=\"sans-serif\" transform=\"rotate(90 " << short_num(x) << " "
       << short_num(label_y) << ")\">" << xml_escape(names[j]) << "</text>\n";
  }
  os << "</svg>\n";
  write_file(path, os.str());
}

void write_salience_csv(const std::filesystem::path& path, std::span<const std::string> names,
                        std::span<const NamedSalience> series) {
  for (const auto& s : series) check_names(static_cast<Eigen::Index>(s.values.size()), names, "write_salience_csv");
  std::ostringstream os;
  os << "index,feature";
  for (const auto& s : series) os << ',' << csv_field(s.condition);
  os << '\n';
  for (std::size_t j = 0; j < names.size(); ++j) {
    os << j << ',' << csv_field(names[j]);
    for (const auto& s : series) os << ',' << num(s.values[j]);
    os << '\n';
  }
  write_file(path, os.str());
}

void write_salience_svg(const std::filesystem::path& path, std::span<const std::string> names,
                        std::span<const NamedSalience> series) {
  for (const auto& s : series) check_names(static_cast<Eigen::Index>(s.values.size()), names, "write_salience_svg");
  const std::size_t m = names.size();
  double vmax = 0.0;
  for (const auto& s : series) {
    for (double v : s.values) vmax = std::max(vmax, v);
  }
  if (vmax <= 0.0) vmax = 1.0;
  const double left = 50.0, top = 30.0, plot_h = 240.0, step = 14.0, bottom = 120.0;
  const double plot_w = step * static_cast<double>(std::max<std::size_t>(m, 2) - 1);
  const double width = left + plot_w + 40.0, height = top + plot_h + bottom;
  auto px = [&](std::size_t j) { return left + step * static_cast<double>(j); };
  auto py = [&](double v) { return top + plot_h * (1.0 - v / vmax); };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << short_num(width) << "\" height=\""
     << short_num(height) << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<line x1=\"" << short_num(left) << "\" y1=\"" << short_num(top + plot_h) << "\" x2=\""
     << short_num(left + plot_w) << "\" y2=\"" << short_num(top + plot_h) << "\" stroke=\"black\"/>\n"
     << "<line x1=\"" << short_num(left) << "\" y1=\"" << short_num(top) << "\" x2=\"" << short_num(left)
     << "\" y2=\"" << short_num(top + plot_h) << "\" stroke=\"black\"/>\n"
     << "<text x=\"4\" y=\"" << short_num(top + 4) << "\" font-size=\"9\" font-family=\"sans-serif\">"
     << num(vmax) << "</text>\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const char* colour = kPalette[k % (sizeof kPalette / sizeof kPalette[0])];
    os << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t j = 0; j < m; ++j) os << (j ? " " : "") << short_num(px(j)) << ',' << short_num(py(series[k].values[j]));
    os << "\"/>\n"
       << "<text x=\"" << short_num(left + 10) << "\" y=\"" << short_num(14 + 12.0 * static_cast<double>(k))
       << "\" font-size=\"10\" font-family=\"sans-serif\" fill=\"" << colour << "\">" << xml_escape(series[k].condition)
       << "</text>\n";
  }
  const double label_y = top + plot_h + 6.0;
  for (std::size_t j = 0; j < m; ++j) {
    os << "<text x=\"" << short_num(px(j)) << "\" y=\"" << short_num(label_y)
       << "\" font-size=\"8\" font-family=\"sans-serif\" transform=\"rotate(90 " << short_num(px(j)) << " "
       << short_num(label_y) << ")\">" << xml_escape(names[j]) << "</text>\n";
  }
  os << "</svg>\n";
  write_file(path, os.str());
}

ReportPaths default_report_paths(const std::filesystem::path& dir) {
  return {dir / "heatmap.csv", dir / "heatmap.svg", dir / "salience.csv", dir / "salience.svg", dir / "summary.json"};
}

nlohmann::json report_summary(const ReportInputs& in) {
  nlohmann::json j;
  j["features"] = in.names;
  j["used_samples"] = in.used_samples;
  j["total_samples"] = in.total_samples;
  j["top_k"] = in.top_k;
  nlohmann::json conds = nlohmann::json::array();
  for (const auto& s : in.salience) {
    nlohmann::json top = nlohmann::json::array();
    for (std::size_t idx : top_k(s.values, in.top_k)) {
      top.push_back({{"index", idx}, {"feature", in.names.at(idx)}, {"salience", s.values[idx]}});
    }
    conds.push_back({{"condition", s.condition}, {"salience", s.values}, {"top", top}});
  }
  j["conditions"] = conds;
  if (in.comparison) {
    const auto& c = *in.comparison;
    nlohmann::json ranked = nlohmann::json::array();
    for (std::size_t r = 0; r < std::min(in.top_k, c.ranked.size()); ++r) {
      const std::size_t idx = c.ranked[r];
      ranked.push_back({{"index", idx}, {"feature", c.names[idx]}, {"diff", c.diff[idx]}});
    }
    j["comparison"] = {{"diff", c.diff}, {"top", ranked}};
  }
  if (!in.shifts.empty()) {
    nlohmann::json shifts = nlohmann::json::array();
    for (const auto& f : in.shifts) {
      shifts.push_back({{"feature", f.name},
                        {"mean_a", f.mean_a},
                        {"mean_b", f.mean_b},
                        {"u", f.test.u_a},
                        {"z", f.test.z},
                        {"p", f.test.p_value},
                        {"degenerate", f.test.degenerate},
                        {"cliffs_delta", f.cliffs_delta}});
    }
    j["feature_shift"] = shifts;
  }
  if (!in.extra.empty()) j["meta"] = in.extra;
  return j;
}

void emit_report(const ReportInputs& in, const ReportPaths& paths) {
  if (in.salience.empty()) throw Error(ErrorKind::kInvalidArgument, "emit_report: no salience series");
  if (in.mean_attention) {
    write_heatmap_csv(paths.heatmap_csv, *in.mean_attention, in.names);
    write_heatmap_svg(paths.heatmap_svg, *in.mean_attention, in.names);
  }
  write_salience_csv(paths.salience_csv, in.names, in.salience);
  write_salience_svg(paths.salience_svg, in.names, in.salience);
  write_file(paths.summary_json, report_summary(in).dump(2) + "\n");
}

}  // namespace adcue
