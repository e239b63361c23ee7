#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "adcue/interpret.hpp"
#include "adcue/models.hpp"
#include "adcue/report.hpp"
#include "adcue/rng.hpp"
#include "adcue/stats.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace adcue;
using namespace adcue::testing;

namespace {

Tensor2 randn(Rng& rng, long r, long c) {
  Tensor2 t(r, c);
  for (long i = 0; i < t.size(); ++i) t.data()[i] = rng.normal();
  return t;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> names(std::size_t m) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < m; ++i) out.push_back("f" + std::to_string(i));
  return out;
}

}  // namespace

TEST_CASE("mean attention averages correctly predicted samples only") {
  Rng rng(1);
  CrossAttnModel model(4, 6, rng);
  Rng data(2);
  std::vector<Example> test;
  for (int i = 0; i < 10; ++i) {
    Example ex;
    ex.sample_id = std::to_string(i);
    ex.frames = randn(data, 1 + i % 3, 6);
    ex.knowledge = randn(data, 1, 4);
    const auto pred = predict(model.logits(ex));
    ex.label = i < 6 ? pred : 1 - pred;
    test.push_back(ex);
  }
  const auto ma = collect_mean_attention(model, test);
  CHECK(ma.used == 6);
  CHECK(ma.total == 10);
  Tensor2 oracle = Tensor2::Zero(6, 4);
  for (int i = 0; i < 6; ++i) oracle += model.forward(test[i].frames, test[i].knowledge).attention;
  oracle /= 6.0;
  CHECK((ma.mean - oracle).cwiseAbs().maxCoeff() <= 1e-15);
  for (long r = 0; r < ma.mean.rows(); ++r) CHECK(std::abs(ma.mean.row(r).sum() - 1.0) <= 1e-12);

  for (auto& ex : test) ex.label = 1 - predict(model.logits(ex));
  CHECK(error_kind_of([&] { collect_mean_attention(model, test); }) == ErrorKind::kNothingToInterpret);
  CHECK(error_kind_of([&] { collect_mean_attention(model, std::span<const Example>{}); }) ==
        ErrorKind::kInvalidArgument);
}

TEST_CASE("mean_matrix") {
  std::vector<Tensor2> ms = {Tensor2::Constant(2, 2, 1.0), Tensor2::Constant(2, 2, 3.0)};
  CHECK(mean_matrix(ms) == Tensor2::Constant(2, 2, 2.0));
  ms.push_back(Tensor2::Zero(3, 2));
  CHECK(error_kind_of([&] { mean_matrix(ms); }) == ErrorKind::kShape);
}

TEST_CASE("feature salience") {
  for (long m : {1L, 5L, 35L, 60L}) {
    const auto s = feature_salience(Tensor2::Constant(8, m, 1.0 / static_cast<double>(m)));
    for (double v : s) CHECK(v == 1.0 / static_cast<double>(m));
  }
  Tensor2 a(2, 3);
  a << 0.5, 0.5, 0.0, 0.1, 0.8, 0.1;
  const auto s = feature_salience(a);
  CHECK(s[0] == doctest::Approx(0.3));
  CHECK(s[1] == doctest::Approx(0.65));
  CHECK(s[2] == doctest::Approx(0.05));
  CHECK(s[0] + s[1] + s[2] == doctest::Approx(1.0));
  a(0, 0) = std::nan("");
  CHECK(error_kind_of([&] { feature_salience(a); }) == ErrorKind::kNumeric);
}

TEST_CASE("top_k ordering and ties") {
  const std::vector<double> v = {0.1, 0.3, 0.3, 0.05, 0.25};
  CHECK(top_k(v, 3) == std::vector<std::size_t>{1, 2, 4});
  CHECK(top_k(v, 10).size() == 5);
  CHECK(top_k(v, 0).empty());
}

TEST_CASE("condition comparison is antisymmetric") {
  const std::vector<double> a = {0.2, 0.5, 0.3}, b = {0.4, 0.4, 0.2};
  const auto n = names(3);
  const auto ab = compare_conditions(a, b, n);
  const auto ba = compare_conditions(b, a, n);
  for (std::size_t i = 0; i < 3; ++i) CHECK(ab.diff[i] == -ba.diff[i]);
  CHECK(ab.ranked == std::vector<std::size_t>{1, 2, 0});
  CHECK(ba.ranked.front() == 0);
  const std::vector<double> short_b = {1.0};
  CHECK(error_kind_of([&] { compare_conditions(a, short_b, n); }) == ErrorKind::kShape);
}

TEST_CASE("Mann-Whitney U matches brute force") {
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> a, b;
    const auto na = 2 + rng.below(10), nb = 2 + rng.below(10);
    for (std::size_t i = 0; i < na; ++i) a.push_back(static_cast<double>(rng.below(6)));
    for (std::size_t i = 0; i < nb; ++i) b.push_back(static_cast<double>(rng.below(6)));
    const auto r = stats::mann_whitney_u(a, b);
    CHECK(r.u_a == mann_whitney_u_oracle(a, b));
    CHECK(r.p_value >= 0.0);
    CHECK(r.p_value <= 1.0);
    const auto rev = stats::mann_whitney_u(b, a);
    CHECK(rev.u_a == static_cast<double>(na * nb) - r.u_a);
    if (!r.degenerate) CHECK(rev.z == doctest::Approx(-r.z));
  }
  // No ties, fully separated 3 vs 3: U = 9, mu = 4.5, var = 5.25.
  const std::vector<double> lo = {1, 2, 3}, hi = {4, 5, 6};
  const auto r = stats::mann_whitney_u(hi, lo);
  CHECK(r.u_a == 9.0);
  CHECK(r.z == doctest::Approx(4.0 / std::sqrt(5.25)).epsilon(1e-14));
  CHECK(r.p_value == doctest::Approx(std::erfc(4.0 / std::sqrt(5.25) / std::sqrt(2.0))).epsilon(1e-14));
  const std::vector<double> same = {2, 2, 2};
  CHECK(stats::mann_whitney_u(same, same).degenerate);
}

TEST_CASE("Cliff's delta") {
  const std::vector<double> lo = {1, 2, 3}, hi = {4, 5, 6}, mid = {2, 2};
  CHECK(stats::cliffs_delta(lo, hi) == 1.0);
  CHECK(stats::cliffs_delta(hi, lo) == -1.0);
  CHECK(stats::cliffs_delta(lo, lo) == 0.0);
  // b = 2 vs a = {1, 2, 3}: one greater, one less per element.
  CHECK(stats::cliffs_delta(lo, mid) == 0.0);
}

TEST_CASE("feature shift report") {
  const std::vector<std::vector<double>> a = {{0, 5}, {1, 6}, {2, 5}}, b = {{10, 5}, {11, 6}, {12, 5}};
  const auto n = names(2);
  const auto shifts = feature_shift_report(a, b, n);
  REQUIRE(shifts.size() == 2);
  CHECK(shifts[0].cliffs_delta == 1.0);
  CHECK(shifts[0].mean_a == 1.0);
  CHECK(shifts[0].mean_b == 11.0);
  CHECK(shifts[0].test.u_a == 0.0);
  CHECK(shifts[1].cliffs_delta == 0.0);
  CHECK(shifts[1].name == "f1");
  const std::vector<std::vector<double>> one = {{0, 1}};
  CHECK(error_kind_of([&] { feature_shift_report(one, b, n); }) == ErrorKind::kInvalidArgument);
}

TEST_CASE("report artifacts: shapes and determinism") {
  TempDir dir("report");
  const std::size_t m = 5, d = 300;
  Rng rng(3);
  Tensor2 att = randn(rng, d, m).array().exp().matrix();
  for (long r = 0; r < att.rows(); ++r) att.row(r) /= att.row(r).sum();
  ReportInputs in;
  in.names = names(m);
  in.salience = {{"manual", feature_salience(att)}, {"asr:tiny", std::vector<double>(m, 0.2)}};
  in.mean_attention = &att;
  in.used_samples = 40;
  in.total_samples = 48;
  in.comparison = compare_conditions(in.salience[0].values, in.salience[1].values, in.names);
  in.top_k = 3;

  const auto p1 = default_report_paths(dir / "one");
  const auto p2 = default_report_paths(dir / "two");
  std::filesystem::create_directories(dir / "one");
  std::filesystem::create_directories(dir / "two");
  emit_report(in, p1);
  emit_report(in, p2);
  for (auto member : {&ReportPaths::heatmap_csv, &ReportPaths::heatmap_svg, &ReportPaths::salience_csv,
                      &ReportPaths::salience_svg, &ReportPaths::summary_json}) {
    CHECK(slurp(p1.*member) == slurp(p2.*member));
  }

  std::istringstream heat(slurp(p1.heatmap_csv));
  std::string line;
  std::getline(heat, line);
  CHECK(line == "f0,f1,f2,f3,f4");
  std::size_t rows = 0;
  while (std::getline(heat, line)) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 4);
  }
  CHECK(rows == d);

  std::istringstream sal(slurp(p1.salience_csv));
  std::getline(sal, line);
  CHECK(line == "index,feature,manual,asr:tiny");
  rows = 0;
  while (std::getline(sal, line)) ++rows;
  CHECK(rows == m);

  const auto svg = slurp(p1.heatmap_svg);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(std::count(svg.begin(), svg.end(), '\n') < 256 * m + 100);

  const auto summary = nlohmann::json::parse(slurp(p1.summary_json));
  CHECK(summary["conditions"].size() == 2);
  CHECK(summary["conditions"][0]["top"].size() == 3);
  CHECK(summary["conditions"][0]["top"][0]["index"] == top_k(in.salience[0].values, 1)[0]);
  CHECK(summary.contains("comparison"));

  ReportInputs empty;
  CHECK(error_kind_of([&] { emit_report(empty, p1); }) == ErrorKind::kInvalidArgument);
}
