#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <set>
#include <sstream>

#include "adcue/attentive_pool.hpp"
#include "adcue/grad_check.hpp"
#include "adcue/models.hpp"
#include "adcue/rng.hpp"
#include "adcue/synthetic.hpp"
#include "adcue/training.hpp"
#include "test_support.hpp"

using namespace adcue;
using namespace adcue::testing;

namespace {

Tensor2 randn(Rng& rng, long r, long c) {
  Tensor2 t(r, c);
  for (long i = 0; i < t.size(); ++i) t.data()[i] = rng.normal();
  return t;
}

std::vector<Example> random_examples(std::size_t count, std::size_t d, std::size_t m, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Example> out;
  for (std::size_t i = 0; i < count; ++i) {
    Example ex;
    ex.sample_id = "e" + std::to_string(i);
    ex.frames = randn(rng, static_cast<long>(1 + rng.below(5)), static_cast<long>(d));
    ex.knowledge = randn(rng, 1, static_cast<long>(m));
    ex.label = rng.below(2);
    out.push_back(std::move(ex));
  }
  return out;
}

std::vector<const Example*> pointers(const std::vector<Example>& v) {
  std::vector<const Example*> p;
  for (const auto& e : v) p.push_back(&e);
  return p;
}

// Predicts AD for ids listed in `ad`, HC otherwise.
class Scripted : public Classifier {
 public:
  explicit Scripted(std::set<std::string> ad) : ad_(std::move(ad)) {}
  Tensor2 logits(const Example& ex) const override {
    Tensor2 l(1, 2);
    if (ad_.count(ex.sample_id)) {
      l << 1.0, 0.0;
    } else {
      l << 0.0, 1.0;
    }
    return l;
  }
  double loss_and_gradients(std::span<const Example* const>) override { return 0.0; }
  std::string kind() const override { return "scripted"; }
  nlohmann::json architecture() const override { return {}; }

 private:
  std::set<std::string> ad_;
};

PreparedData small_synthetic(std::size_t per_class, std::uint64_t seed) {
  SyntheticSpec spec;
  spec.train_per_class = per_class;
  spec.test_per_class = 8;
  spec.embedding_dim = 16;
  spec.feature_count = 8;
  spec.planted = {2, 5};
  spec.n_max = 6;
  spec.seed = seed;
  const auto data = generate_synthetic(spec);
  return prepare_data(data.samples, ModelKind::kCrossAttention);
}

}  // namespace

TEST_CASE("pooled_stats hand cases") {
  Tensor2 mean, sd;
  Tensor2 one(1, 3);
  one << 1, -2, 3;
  pooled_stats(one, Tensor2::Ones(1, 1), mean, sd);
  CHECK(mean == one);
  CHECK(sd.isZero(0.0));

  Tensor2 two(2, 1);
  two << 0, 2;
  Tensor2 alpha(2, 1);
  alpha << 0.5, 0.5;
  pooled_stats(two, alpha, mean, sd);
  CHECK(mean(0, 0) == 1.0);
  CHECK(sd(0, 0) == 1.0);

  Tensor2 same = Tensor2::Constant(3, 2, 0.1);
  Tensor2 third = Tensor2::Constant(3, 1, 1.0 / 3.0);
  pooled_stats(same, third, mean, sd);
  CHECK(sd.allFinite());
  CHECK(sd.maxCoeff() < 1e-7);
}

TEST_CASE("predict breaks ties toward AD") {
  CHECK(predict(Tensor2::Zero(1, 2)) == 0);
  Tensor2 l(1, 2);
  l << -1, 2;
  CHECK(predict(l) == 1);
}

TEST_CASE("cross-attention: attention shape and rows") {
  Rng rng(1);
  CrossAttnModel model(6, 10, rng);
  Rng data(2);
  for (long n : {1L, 3L, 9L}) {
    const auto out = model.forward(randn(data, n, 10), randn(data, 1, 6));
    CHECK(out.attention.rows() == 10);
    CHECK(out.attention.cols() == 6);
    CHECK(out.y.rows() == n);
    CHECK(out.y.cols() == 6);
    CHECK(out.logits.cols() == 2);
    for (long r = 0; r < out.attention.rows(); ++r) {
      CHECK(std::abs(out.attention.row(r).sum() - 1.0) <= 1e-12);
      CHECK(out.attention.row(r).minCoeff() >= 0.0);
    }
  }
  // Constant knowledge makes every score row constant.
  const auto flat = model.forward(randn(data, 4, 10), Tensor2::Constant(1, 6, 0.7));
  CHECK((flat.attention.array() - 1.0 / 6.0).abs().maxCoeff() <= 1e-12);

  CHECK(error_kind_of([&] { model.forward(randn(data, 3, 9), randn(data, 1, 6)); }) == ErrorKind::kShape);
  CHECK(error_kind_of([&] { model.forward(randn(data, 3, 10), randn(data, 1, 5)); }) == ErrorKind::kShape);
  CHECK(error_kind_of([&] { model.forward(Tensor2(0, 10), randn(data, 1, 6)); }) == ErrorKind::kShape);
  CHECK(model.kind() == "cross-attention");
  CHECK(model.params().contains("W_q"));
  CHECK(model.params().contains("pool.u"));
}

TEST_CASE("cross-attention gradients") {
  for (PoolMode mode : {PoolMode::kMeanStd, PoolMode::kMean}) {
    Rng rng(3);
    CrossAttnModel model(5, 7, rng, mode);
    const auto ex = random_examples(4, 7, 5, 11);
    const auto batch = pointers(ex);
    const auto r = grad_check([&](bool) { return model.loss_and_gradients(batch); }, model.params());
    CHECK(r.max_rel_error <= 1e-5);
    CHECK(r.checked == model.params().scalar_count());
  }
}

TEST_CASE("self-attention: n = 1 and gradients") {
  Rng rng(4);
  SelfAttnModel model(6, 5, rng);
  Rng data(5);
  const auto l = model.forward(randn(data, 1, 6));
  CHECK(l.cols() == 2);
  CHECK(l.allFinite());
  const auto ex = random_examples(3, 6, 2, 12);
  const auto batch = pointers(ex);
  const auto r = grad_check([&](bool) { return model.loss_and_gradients(batch); }, model.params());
  CHECK(r.max_rel_error <= 1e-5);
  CHECK(error_kind_of([&] { model.forward(randn(data, 2, 5)); }) == ErrorKind::kShape);
}

TEST_CASE("make_classifier rebuilds the architecture") {
  Rng rng(6);
  CrossAttnModel a(4, 8, rng, PoolMode::kMean);
  Rng rng2(99);
  auto b = make_classifier(a.architecture(), rng2);
  CHECK(b->kind() == "cross-attention");
  CHECK(b->params().scalar_count() == a.params().scalar_count());
  SelfAttnModel s(3, 4, rng);
  CHECK(make_classifier(s.architecture(), rng2)->params().scalar_count() == s.params().scalar_count());
}

TEST_CASE("standardizer uses training statistics") {
  Standardizer st;
  const std::vector<std::vector<double>> rows = {{1, 5}, {3, 5}};
  st.fit(rows);
  CHECK(st.mean() == std::vector<double>{2, 5});
  CHECK(st.scale()[0] == 1.0);
  CHECK(st.scale()[1] == 1.0);
  const std::vector<double> x = {4, 6};
  CHECK(st.transform(x) == std::vector<double>{2, 1});
  const auto back = Standardizer::from_json(st.to_json());
  CHECK(back.mean() == st.mean());
}

TEST_CASE("training lowers the loss and is deterministic") {
  const auto data = small_synthetic(24, 3);
  TrainConfig cfg;
  cfg.epochs = 15;
  cfg.lr = 3e-3;
  cfg.batch_size = 8;
  cfg.hidden = 8;
  std::ostringstream log;
  const auto a = train(cfg, data.train, 1, &log);
  REQUIRE(a.history.size() == 15);
  CHECK(a.history.back().mean_loss < a.history.front().mean_loss);
  const std::string text = log.str();
  CHECK(std::count(text.begin(), text.end(), '\n') == 15);

  const auto b = train(cfg, data.train, 1);
  for (const auto& p : a.model->params().all()) {
    const auto& q = b.model->params().get(p.name).value;
    CHECK(std::memcmp(p.value.data(), q.data(), sizeof(double) * p.value.size()) == 0);
  }
  const auto c = train(cfg, data.train, 2);
  CHECK(c.model->params().get("W_q").value != a.model->params().get("W_q").value);
}

TEST_CASE("zero epochs leaves the initialization untouched") {
  const auto data = small_synthetic(4, 4);
  TrainConfig cfg;
  cfg.epochs = 0;
  const auto r = train(cfg, data.train, 5);
  CHECK(r.history.empty());
  Rng rng(5);
  const auto fresh = build_model(cfg, data.train.front(), rng);
  for (const auto& p : fresh->params().all()) CHECK(r.model->params().get(p.name).value == p.value);
}

TEST_CASE("training config validation") {
  TrainConfig cfg;
  cfg.lr = 0.0;
  CHECK(error_kind_of([&] { cfg.validate(); }) == ErrorKind::kInvalidArgument);
  cfg = {};
  cfg.seeds.clear();
  CHECK(error_kind_of([&] { cfg.validate(); }) == ErrorKind::kInvalidArgument);
  cfg = {};
  cfg.model = ModelKind::kSelfAttnKnowledge;
  const auto back = TrainConfig::from_json(cfg.to_json());
  CHECK(back.model == ModelKind::kSelfAttnKnowledge);
  CHECK(back.seeds == cfg.seeds);
  CHECK(error_kind_of([] { parse_model_kind("transformer"); }) == ErrorKind::kSchema);
}

TEST_CASE("evaluation arithmetic") {
  std::vector<Example> test;
  std::set<std::string> ad;
  for (int i = 0; i < 48; ++i) {
    Example ex;
    ex.sample_id = "t" + std::to_string(i);
    ex.label = i < 24 ? 0 : 1;
    // 3 AD and 3 HC samples are misclassified.
    const bool wrong = (i < 3) || (i >= 24 && i < 27);
    if ((ex.label == 0) != wrong) ad.insert(ex.sample_id);
    test.push_back(ex);
  }
  const Scripted model(ad);
  const auto ev = evaluate(model, test);
  CHECK(ev.accuracy == 42.0 / 48.0);
  CHECK(ev.accuracy == 0.875);
  CHECK(ev.predictions.size() == 48);
  for (auto& ex : test) ex.label = 1 - ex.label;
  CHECK(evaluate(model, test).accuracy == 1.0 - 0.875);
  CHECK(error_kind_of([&] { evaluate(model, std::span<const Example>{}); }) == ErrorKind::kInvalidArgument);
}

TEST_CASE("multi-seed aggregation") {
  const auto data = small_synthetic(8, 6);
  TrainConfig cfg;
  cfg.epochs = 2;
  cfg.hidden = 4;
  cfg.seeds = {3};
  const auto one = multi_seed_run(cfg, data);
  CHECK(one.std_accuracy == 0.0);
  CHECK(one.mean_accuracy == one.runs[0].evaluation.accuracy);

  cfg.seeds = {1, 2, 3, 4};
  std::ostringstream l1, l2;
  const auto a = multi_seed_run(cfg, data, &l1, 1);
  const auto b = multi_seed_run(cfg, data, &l2, 4);
  CHECK(a.mean_accuracy == b.mean_accuracy);
  CHECK(a.best == b.best);
  std::vector<double> accs;
  for (const auto& r : a.runs) accs.push_back(r.evaluation.accuracy);
  double best = *std::max_element(accs.begin(), accs.end());
  CHECK(accs[a.best] == best);
  CHECK(std::find(accs.begin(), accs.end(), best) - accs.begin() == static_cast<long>(a.best));
  // Per-seed logs come out in seed order regardless of scheduling; only the
  // wall-clock field differs.
  auto strip = [](std::string s) {
    std::string out;
    std::istringstream in(s);
    for (std::string line; std::getline(in, line);) {
      auto j = nlohmann::json::parse(line);
      j.erase("wall_seconds");
      out += j.dump() + "\n";
    }
    return out;
  };
  CHECK(strip(l1.str()) == strip(l2.str()));
}
