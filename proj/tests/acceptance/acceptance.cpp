#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "adcue/attentive_pool.hpp"
#include "adcue/grad_check.hpp"
#include "adcue/interpret.hpp"
#include "adcue/models.hpp"
#include "adcue/rng.hpp"
#include "adcue/speech_features.hpp"
#include "adcue/stats.hpp"
#include "adcue/synthetic.hpp"
#include "adcue/text_features.hpp"
#include "adcue/training.hpp"
#include "adcue/wer.hpp"
#include "adcue_cli/commands.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace adcue;
using namespace adcue::testing;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  std::string name;
  std::function<Outcome()> run;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

Tensor2 randn(Rng& rng, long r, long c, double scale = 1.0) {
  Tensor2 t(r, c);
  for (long i = 0; i < t.size(); ++i) t.data()[i] = scale * rng.normal();
  return t;
}

std::vector<Example> random_examples(Rng& rng, std::size_t count, std::size_t d, std::size_t m) {
  std::vector<Example> out;
  for (std::size_t i = 0; i < count; ++i) {
    Example ex;
    ex.frames = randn(rng, static_cast<long>(1 + rng.below(4)), static_cast<long>(d));
    ex.knowledge = randn(rng, 1, static_cast<long>(m));
    ex.label = rng.below(2);
    out.push_back(std::move(ex));
  }
  return out;
}

// ---------------------------------------------------------------------------

// Elementwise layers chained behind one cross-entropy head.
double ops_chain_error(std::uint64_t seed) {
  Rng rng(seed);
  ParamSet p;
  const Tensor2 x = randn(rng, 3, 4);
  p.add("W", randn(rng, 4, 5, 0.5));
  p.add("b", randn(rng, 1, 5, 0.1));
  p.add("gain", Tensor2::Ones(1, 5) + randn(rng, 1, 5, 0.1));
  p.add("offset", randn(rng, 1, 5, 0.1));
  p.add("V", randn(rng, 5, 2));
  const std::size_t label = rng.below(2);
  auto closure = [&](bool backward) {
    auto& W = p.get("W");
    auto& b = p.get("b");
    auto& g = p.get("gain");
    auto& o = p.get("offset");
    auto& V = p.get("V");
    const Tensor2 h = add_bias(matmul(x, W.value), b.value);
    LayerNormCache cache;
    const Tensor2 n = layer_norm(h, g.value, o.value, &cache);
    const Tensor2 t = tanh_forward(n);
    const Tensor2 a = softmax_rows(t);
    const Tensor2 pooled = Tensor2::Constant(1, 3, 1.0 / 3.0) * a;
    const auto ce = cross_entropy(matmul(pooled, V.value), label);
    if (backward) {
      const auto dl = matmul_backward(pooled, V.value, ce.grad);
      V.grad += dl.db;
      const Tensor2 dt = softmax_rows_backward(a, Tensor2::Constant(3, 1, 1.0 / 3.0) * dl.da);
      const auto dln = layer_norm_backward(cache, g.value, tanh_backward(t, dt));
      g.grad += dln.dgain;
      o.grad += dln.doffset;
      const auto db = add_bias_backward(dln.dx);
      b.grad += db.dbias;
      W.grad += matmul_backward(x, W.value, db.dx).db;
    }
    return ce.loss;
  };
  return grad_check(closure, p).max_rel_error;
}

// Attentive pooling on its own, including the gradient reaching its input.
double pool_error(std::uint64_t seed, PoolMode mode) {
  Rng rng(seed);
  ParamSet p;
  p.add("y", randn(rng, 1 + static_cast<long>(rng.below(5)), 4));
  AttentivePool pool(p, "pool", 4, 3, rng, mode);
  p.add("readout", randn(rng, static_cast<long>(pool.output_dim()), 2));
  const std::size_t label = rng.below(2);
  auto closure = [&](bool backward) {
    auto& y = p.get("y");
    auto& r = p.get("readout");
    PoolCache cache;
    const Tensor2 pooled = pool.forward(y.value, &cache);
    const auto ce = cross_entropy(matmul(pooled, r.value), label);
    if (backward) {
      const auto dl = matmul_backward(pooled, r.value, ce.grad);
      r.grad += dl.db;
      y.grad += pool.backward(cache, dl.da);
    }
    return ce.loss;
  };
  return grad_check(closure, p).max_rel_error;
}

template <typename Model>
double model_error(Model& model, const std::vector<Example>& batch_data, std::size_t coords = 0) {
  std::vector<const Example*> batch;
  for (const auto& e : batch_data) batch.push_back(&e);
  GradCheckOptions options;
  options.max_coords_per_param = coords;
  return grad_check([&](bool) { return model.loss_and_gradients(batch); }, model.params(), options).max_rel_error;
}

Outcome gradient_correctness() {
  const auto t0 = Clock::now();
  std::map<std::string, double> worst;
  const int seeds = 20;
  for (std::uint64_t seed = 1; seed <= seeds; ++seed) {
    auto note = [&](const std::string& what, double e) { worst[what] = std::max(worst[what], e); };
    note("ops", ops_chain_error(seed));
    note("pool", pool_error(seed, PoolMode::kMeanStd));
    note("pool-mean", pool_error(seed, PoolMode::kMean));
    Rng rng(1000 + seed);
    CrossAttnModel cross(6, 10, rng, seed % 2 ? PoolMode::kMeanStd : PoolMode::kMean);
    note("cross-attention", model_error(cross, random_examples(rng, 3, 10, 6)));
    SelfAttnModel self(7, 5, rng, seed % 2 ? PoolMode::kMeanStd : PoolMode::kMean);
    note("self-attention", model_error(self, random_examples(rng, 3, 7, 1)));
    // Production feature counts, narrower embeddings, sampled coordinates.
    CrossAttnModel wide(35, 48, rng);
    note("cross-attention-m35", model_error(wide, random_examples(rng, 2, 48, 35), 40));
    SelfAttnModel knowledge(35, 16, rng);
    note("self-attention-35x16", model_error(knowledge, random_examples(rng, 2, 35, 1), 40));
  }
  const double secs = seconds_since(t0);
  double max_err = 0.0;
  std::string parts;
  for (const auto& [k, v] : worst) {
    max_err = std::max(max_err, v);
    parts += fmt(" %s=%.2e", k.c_str(), v);
  }
  return {max_err <= 1e-4 && secs < 60.0,
          fmt("%d seeds, max rel err %.2e (<= 1e-4),%s; %.1f s (< 60 s)", seeds, max_err, parts.c_str(), secs)};
}

Outcome attention_contract() {
  const std::size_t d = kEmbeddingDim;
  double worst_row = 0.0;
  bool shapes_ok = true, uniform_exact = true;
  int cases = 0;
  for (std::size_t m : {35u, 60u}) {
    Rng rng(m);
    CrossAttnModel model(m, d, rng);
    for (long n = 1; n <= 16; ++n) {
      const auto out = model.forward(randn(rng, n, static_cast<long>(d)), randn(rng, 1, static_cast<long>(m)));
      shapes_ok = shapes_ok && out.attention.rows() == static_cast<long>(d) && out.attention.cols() == static_cast<long>(m);
      for (long r = 0; r < out.attention.rows(); ++r) {
        worst_row = std::max(worst_row, std::abs(out.attention.row(r).sum() - 1.0));
      }
      const double c = rng.normal();
      const auto flat = model.forward(randn(rng, n, static_cast<long>(d)), Tensor2::Constant(1, static_cast<long>(m), c));
      const double u = 1.0 / static_cast<double>(m);
      uniform_exact = uniform_exact && (flat.attention.array() == u).all();
      ++cases;
    }
  }
  return {shapes_ok && worst_row <= 1e-6 && uniform_exact,
          fmt("%d inputs, A is 1024 x m: %s, max |row sum - 1| = %.2e (<= 1e-6), constant knowledge exactly uniform: %s",
              cases, shapes_ok ? "yes" : "no", worst_row, uniform_exact ? "yes" : "no")};
}

Outcome planted_cue_recovery() {
  const auto t0 = Clock::now();
  SyntheticSpec spec;  // 100 + 100 train, 24 + 24 test, planted {4, 17, 28}, effect 2.0
  const auto data = generate_synthetic(spec);
  const auto prepared = prepare_data(data.samples, ModelKind::kCrossAttention);
  TrainConfig cfg;  // seeds 1..10
  const auto res = multi_seed_run(cfg, prepared);
  const auto& best = res.runs[res.best];
  const auto* model = dynamic_cast<const CrossAttnModel*>(best.result.model.get());
  const auto salience = feature_salience(collect_mean_attention(*model, prepared.test).mean);
  const auto top = top_k(salience, 5);
  int hits = 0;
  std::string top_str;
  for (std::size_t i : top) {
    hits += std::count(spec.planted.begin(), spec.planted.end(), i) > 0;
    top_str += (top_str.empty() ? "" : ",") + std::to_string(i);
  }
  const double secs = seconds_since(t0);
  std::string accs;
  for (const auto& r : res.runs) accs += fmt("%s%.3f", accs.empty() ? "" : " ", r.evaluation.accuracy);
  return {res.mean_accuracy >= 0.9 && hits >= 2 && secs < 300.0,
          fmt("mean acc %.4f (>= 0.90) [%s], best seed %llu top-5 {%s} has %d planted (>= 2); %.0f s (< 300 s)",
              res.mean_accuracy, accs.c_str(), static_cast<unsigned long long>(best.seed), top_str.c_str(), hits,
              secs)};
}

Outcome wer_oracle() {
  Rng rng(2024);
  int mismatches = 0;
  for (int i = 0; i < 200; ++i) {
    std::vector<std::string> ref, hyp;
    const std::size_t vocab = 2 + rng.below(8);
    for (std::size_t k = 0, n = 1 + rng.below(12); k < n; ++k) ref.push_back("w" + std::to_string(rng.below(vocab)));
    for (std::size_t k = 0, n = rng.below(13); k < n; ++k) hyp.push_back("w" + std::to_string(rng.below(vocab)));
    const auto w = wer(ref, hyp);
    const double expect = static_cast<double>(edit_distance_oracle(ref, hyp)) / static_cast<double>(ref.size());
    if (w.wer != expect) ++mismatches;
    if (wer(ref, ref).wer != 0.0) ++mismatches;
  }
  const double hand = wer("the cat sat on the mat", "the cat sit on mat").wer;
  return {mismatches == 0 && hand == 2.0 / 6.0,
          fmt("200 random pairs vs brute force: %d mismatches; wer(x,x) = 0; hand case %.17g (= 2/6)", mismatches, hand)};
}

Outcome text_oracles() {
  Rng rng(99);
  double mtld_worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    std::vector<std::string> toks;
    const std::size_t vocab = 20 + rng.below(150);
    for (int k = 0; k < 200; ++k) toks.push_back("t" + std::to_string(rng.below(vocab)));
    const double ref = mtld_oracle(toks);
    mtld_worst = std::max(mtld_worst, std::abs(mtld(toks) - ref) / ref);
  }

  struct Fixture {
    std::vector<std::string> tokens;
    std::vector<Span> sentences;
    std::unordered_set<std::string> familiar;
    // words, sentences, syllables, complex words, letters, characters, difficult words
    double w, s, syl, cx, let, ch, dif;
  };
  const std::vector<Fixture> fixtures = {
      {{"the", "cat", "sat", "on", "the", "mat"}, {{0, 6}}, {"the", "cat", "sat", "on", "mat"}, 6, 1, 6, 0, 17, 17, 0},
      {{"the", "elephant", "ate", "beautiful", "bananas", "it", "was", "happy"}, {{0, 5}, {5, 8}},
       {"the", "ate", "it", "was", "happy"}, 8, 2, 15, 3, 40, 40, 3},
      {{"i", "like", "the", "table", "do", "you", "yes"}, {{0, 4}, {4, 6}, {6, 7}},
       {"i", "like", "the", "do", "you", "yes"}, 7, 3, 8, 0, 21, 21, 1},
  };
  double read_worst = 0.0;
  for (const auto& f : fixtures) {
    const auto r = readability(f.tokens, f.sentences, f.familiar);
    const double wps = f.w / f.s, spw = f.syl / f.w, pct = 100.0 * f.dif / f.w;
    const double expect[6] = {
        206.835 - 1.015 * wps - 84.6 * spw,
        0.39 * wps + 11.8 * spw - 15.59,
        0.4 * (wps + 100.0 * f.cx / f.w),
        0.0588 * (100.0 * f.let / f.w) - 0.296 * (100.0 * f.s / f.w) - 15.8,
        0.1579 * pct + 0.0496 * wps + (pct > 5.0 ? 3.6365 : 0.0),
        4.71 * (f.ch / f.w) + 0.5 * wps - 21.43,
    };
    const double got[6] = {r.fre, r.fkgl, r.gfi, r.cli, r.dcrs, r.ari};
    for (int k = 0; k < 6; ++k) read_worst = std::max(read_worst, std::abs(got[k] - expect[k]));
  }

  double mattr_worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    std::vector<std::string> toks;
    const std::size_t vocab = 2 + rng.below(40);
    for (std::size_t k = 0, n = 1 + rng.below(120); k < n; ++k) toks.push_back("t" + std::to_string(rng.below(vocab)));
    const auto ld = lexical_diversity(toks, toks.size());
    mattr_worst = std::max(mattr_worst, std::abs(ld.mattr - ld.ttr));
  }
  return {mtld_worst <= 1e-12 && read_worst <= 1e-9 && mattr_worst <= 1e-12,
          fmt("MTLD max rel diff %.1e over 50 sequences (<= 1e-12); readability max abs diff %.1e over 3 fixtures x 6 "
              "indices (<= 1e-9); MATTR(W=len) - TTR max %.1e over 200 inputs (<= 1e-12)",
              mtld_worst, read_worst, mattr_worst)};
}

Outcome dsp_fixtures() {
  bool ok = true;
  std::string d = "F0";
  for (double f : {90.0, 120.0, 200.0, 300.0}) {
    const auto c = estimate_f0(sawtooth(f, 2.0));
    double s = 0.0;
    int n = 0;
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (c.voiced[k]) {
        s += c.f0[k];
        ++n;
      }
    }
    const double mean = n ? s / n : 0.0;
    ok = ok && std::abs(mean - f) <= 3.0;
    d += fmt(" %.0f->%.2f", f, mean);
  }
  d += " (+-3 Hz); jitter(4%)";
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto a = vowel_from_periods(jittered_periods(0.008, 0.04, 250, seed));
    const auto c = estimate_f0(a);
    const double j = phonation_features(a, c, detect_gci(a, c)).jitter;
    ok = ok && j >= 3.0 && j <= 5.0;
    d += fmt(" %.2f", j);
  }
  d += " (in [3,5]);";

  // 1 s voiced, 1 s pause, 1 s voiced. Moving each of the two boundaries by
  // up to one hop bounds every ratio.
  auto a = sawtooth(150, 1.0);
  append(a, silence(1.0));
  append(a, sawtooth(150, 1.0));
  const auto c = estimate_f0(a);
  const auto segs = segment_vup(c);
  const auto p = prosody_features(c, segs);
  const double h = c.hop_s;
  const double pvu = p[29], vvu = p[32], vp = p[33];
  const bool layout = segs.size() == 3 && std::abs(segs[1].start_s - 1.0) <= h && std::abs(segs[1].end_s - 2.0) <= h;
  const bool ratios = pvu >= (1 - 2 * h) / (2 + 2 * h) && pvu <= (1 + 2 * h) / (2 - 2 * h) && vvu == 1.0 &&
                      vp >= (2 - 2 * h) / (1 + 2 * h) && vp <= (2 + 2 * h) / (1 - 2 * h);
  ok = ok && layout && ratios;
  d += fmt(" V/P/V PVU %.4f VVU %.4f VP %.4f (0.5, 1, 2 within one hop);", pvu, vvu, vp);

  std::vector<double> periods(250, 1.0 / 120);
  const auto fa = make_audio(resonate(resonate(impulse_train(periods), 500, 60), 1500, 90));
  const auto fm = formant_stats(fa, estimate_f0(fa));
  const bool formants = std::abs(fm.f1_mean - 500) <= 50 && std::abs(fm.f2_mean - 1500) <= 150;
  ok = ok && formants;
  d += fmt(" F1 %.1f F2 %.1f (500/1500 +-10%%)", fm.f1_mean, fm.f2_mean);
  return {ok, d};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism() {
  TempDir dir("acceptance-determinism");
  {
    std::ofstream cfg(dir / "config.json");
    cfg << R"({"conditions": ["synthetic"],
               "synthetic": {"train_per_class": 20, "test_per_class": 6},
               "train": {"epochs": 3, "seeds": [1, 2]}})";
  }
  auto cli = [&](const std::string& out, const std::string& cmd) {
    std::ostringstream o, e;
    return cli::run_cli({"--config", (dir / "config.json").string(), "--out", (dir / out).string(), cmd}, o, e);
  };
  auto hashes = [&](const std::string& out) {
    std::map<std::string, std::string> h;
    const auto j = nlohmann::json::parse(slurp(dir / out / "status" / "train__synthetic.json"));
    for (const auto& o : j.at("outputs")) {
      if (!o.at("sha256").is_null()) h[o.at("path")] = o.at("sha256");
    }
    return h;
  };
  auto checkpoints = [&](const std::string& out) {
    return slurp(dir / out / "models/synthetic/seed-1.ckpt") + slurp(dir / out / "models/synthetic/seed-2.ckpt");
  };
  for (const std::string out : {"a", "b"}) {
    if (cli(out, "synth-data") != 0 || cli(out, "train") != 0) return {false, "CLI run failed"};
  }
  const auto ha = hashes("a"), hb = hashes("b");
  const auto ca = checkpoints("a"), cb = checkpoints("b");
  // Rerun in place.
  if (cli("a", "train") != 0) return {false, "CLI rerun failed"};
  const auto ha2 = hashes("a");
  const auto ca2 = checkpoints("a");
  const bool same_ckpt = !ca.empty() && ca == cb && ca == ca2;
  const bool same_hash = ha.size() >= 3 && ha == hb && ha == ha2;
  return {same_ckpt && same_hash, fmt("two fresh runs + one rerun: checkpoints bitwise identical: %s; %zu hashed outputs "
                                      "identical: %s",
                                      same_ckpt ? "yes" : "no", ha.size(), same_hash ? "yes" : "no")};
}

Outcome interpretability_arithmetic() {
  Rng rng(31);
  int instances = 0, mismatches = 0;
  for (std::size_t na = 3; na <= 8; ++na) {
    for (std::size_t nb = 3; nb <= 8; ++nb) {
      for (int rep = 0; rep < 50; ++rep) {
        std::vector<double> a, b;
        const std::size_t levels = 2 + rng.below(10);  // few levels -> many ties
        for (std::size_t i = 0; i < na; ++i) a.push_back(static_cast<double>(rng.below(levels)));
        for (std::size_t i = 0; i < nb; ++i) b.push_back(static_cast<double>(rng.below(levels)));
        if (stats::mann_whitney_u(a, b).u_a != mann_whitney_u_oracle(a, b)) ++mismatches;
        ++instances;
      }
    }
  }
  int salience_bad = 0, salience_cases = 0;
  for (long m = 1; m <= 60; ++m) {
    for (long d : {1L, 7L, 1024L}) {
      const auto s = feature_salience(Tensor2::Constant(d, m, 1.0 / static_cast<double>(m)));
      for (double v : s) salience_bad += v != 1.0 / static_cast<double>(m);
      ++salience_cases;
    }
  }
  return {mismatches == 0 && salience_bad == 0,
          fmt("Mann-Whitney U vs all-pairs count: %d/%d instances (3v3..8v8) match; uniform salience exactly 1/m: %d "
              "entries off over %d matrices",
              instances - mismatches, instances, salience_bad, salience_cases)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {"gradient-correctness", gradient_correctness},
      {"attention-contract", attention_contract},
      {"planted-cue-recovery", planted_cue_recovery},
      {"wer-oracle", wer_oracle},
      {"text-feature-oracles", text_oracles},
      {"dsp-fixtures", dsp_fixtures},
      {"determinism", determinism},
      {"interpretability-arithmetic", interpretability_arithmetic},
  };
  // Optional arguments select criteria by name.
  std::vector<std::string> only(argv + 1, argv + argc);
  int failed = 0, ran = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.name) == only.end()) continue;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    ++ran;
    failed += !o.pass;
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", c.name.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("acceptance: %d/%d passed\n", ran - failed, ran);
  return failed == 0 ? 0 : 1;
}
