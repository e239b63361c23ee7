#include "adcue/training.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <numeric>
#include <sstream>
#include <thread>

#include "adcue/error.hpp"
#include "adcue/stats.hpp"

namespace adcue {

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::kCrossAttention: return "cross-attention";
    case ModelKind::kSelfAttnEmbeddings: return "self-attention-embeddings";
    case ModelKind::kSelfAttnKnowledge: return "self-attention-knowledge";
  }
  return "cross-attention";
}

ModelKind parse_model_kind(std::string_view text) {
  for (auto k : {ModelKind::kCrossAttention, ModelKind::kSelfAttnEmbeddings, ModelKind::kSelfAttnKnowledge}) {
    if (text == to_string(k)) return k;
  }
  throw Error(ErrorKind::kSchema, "unknown model kind '" + std::string(text) + "'");
}

void TrainConfig::validate() const {
  auto fail = [](const std::string& m) { throw Error(ErrorKind::kInvalidArgument, "train config: " + m); };
  if (!(lr > 0.0)) fail("lr must be positive");
  if (!(weight_decay >= 0.0)) fail("weight_decay must be >= 0");
  if (batch_size == 0) fail("batch_size must be positive");
  if (hidden == 0) fail("hidden must be positive");
  if (seeds.empty()) fail("seed list is empty");
}

nlohmann::json TrainConfig::to_json() const {
  return {{"lr", lr},
          {"weight_decay", weight_decay},
          {"epochs", epochs},
          {"batch_size", batch_size},
          {"seeds", seeds},
          {"hidden", hidden},
          {"pool", pool == PoolMode::kMean ? "mean" : "mean+std"},
          {"model", std::string(to_string(model))}};
}

TrainConfig TrainConfig::from_json(const nlohmann::json& j) {
  TrainConfig c;
  c.lr = j.value("lr", c.lr);
  c.weight_decay = j.value("weight_decay", c.weight_decay);
  c.epochs = j.value("epochs", c.epochs);
  c.batch_size = j.value("batch_size", c.batch_size);
  c.seeds = j.value("seeds", c.seeds);
  c.hidden = j.value("hidden", c.hidden);
  const std::string pool = j.value("pool", std::string("mean+std"));
  if (pool != "mean" && pool != "mean+std") throw Error(ErrorKind::kSchema, "pool must be 'mean' or 'mean+std'");
  c.pool = pool == "mean" ? PoolMode::kMean : PoolMode::kMeanStd;
  c.model = parse_model_kind(j.value("model", std::string("cross-attention")));
  c.validate();
  return c;
}

Example make_example(const BoundSample& s, const Standardizer& standardizer, ModelKind kind) {
  Example ex;
  ex.sample_id = s.sample_id;
  ex.label = static_cast<std::size_t>(s.label);
  const auto z = standardizer.transform(s.knowledge);
  ex.knowledge = Eigen::Map<const Tensor2>(z.data(), 1, static_cast<Eigen::Index>(z.size()));
  if (kind == ModelKind::kSelfAttnKnowledge) {
    ex.frames = ex.knowledge;
  } else {
    const auto& e = s.embedding;
    using FloatRows = Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    ex.frames = Eigen::Map<const FloatRows>(e.values.data(), static_cast<Eigen::Index>(e.rows),
                                            static_cast<Eigen::Index>(e.cols))
                    .cast<double>();
  }
  return ex;
}

PreparedData prepare_data(std::span<const BoundSample> samples, ModelKind kind) {
  PreparedData data;
  std::vector<std::vector<double>> train_rows;
  for (const auto& s : samples) {
    if (s.split == Split::kTrain) train_rows.push_back(s.knowledge);
  }
  if (train_rows.empty()) throw Error(ErrorKind::kInvalidArgument, "prepare_data: no training samples");
  data.standardizer.fit(train_rows);
  for (const auto& s : samples) {
    (s.split == Split::kTrain ? data.train : data.test).push_back(make_example(s, data.standardizer, kind));
  }
  return data;
}

std::unique_ptr<Classifier> build_model(const TrainConfig& config, const Example& ex, Rng& rng) {
  switch (config.model) {
    case ModelKind::kCrossAttention:
      return std::make_unique<CrossAttnModel>(static_cast<std::size_t>(ex.knowledge.cols()),
                                              static_cast<std::size_t>(ex.frames.cols()), rng, config.pool);
    case ModelKind::kSelfAttnEmbeddings:
    case ModelKind::kSelfAttnKnowledge:
      return std::make_unique<SelfAttnModel>(static_cast<std::size_t>(ex.frames.cols()), config.hidden, rng,
                                             config.pool);
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown model kind");
}

TrainResult train(const TrainConfig& config, std::span<const Example> train_set, std::uint64_t seed,
                  std::ostream* log) {
  config.validate();
  if (train_set.empty()) throw Error(ErrorKind::kInvalidArgument, "train: empty training set");
  Rng rng(seed);
  TrainResult result;
  result.model = build_model(config, train_set.front(), rng);
  AdamWConfig opt{config.lr, 0.9, 0.999, 1e-8, config.weight_decay};

  std::vector<std::size_t> order(train_set.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<const Example*> batch;
  for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    const auto start = std::chrono::steady_clock::now();
    rng.shuffle(order);
    double loss_sum = 0.0;
    for (std::size_t i = 0; i < order.size(); i += config.batch_size) {
      batch.clear();
      for (std::size_t j = i; j < std::min(order.size(), i + config.batch_size); ++j) {
        batch.push_back(&train_set[order[j]]);
      }
      const double loss = result.model->loss_and_gradients(batch);
      if (!std::isfinite(loss)) {
        throw Error(ErrorKind::kNumeric, "train: non-finite loss at epoch " + std::to_string(epoch) + " (seed " +
                                             std::to_string(seed) +
                                             "); lower the learning rate or check knowledge-feature scaling");
      }
      loss_sum += loss * static_cast<double>(batch.size());
      adamw_step(result.model->params(), opt);
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    EpochRecord rec{epoch, loss_sum / static_cast<double>(order.size()), seconds};
    result.history.push_back(rec);
    if (log) {
      *log << nlohmann::json{{"seed", seed}, {"epoch", rec.epoch}, {"mean_loss", rec.mean_loss},
                             {"wall_seconds", rec.seconds}}.dump()
           << '\n';
    }
  }
  result.model->params().release_buffers();
  return result;
}

Evaluation evaluate(const Classifier& model, std::span<const Example> test_set) {
  if (test_set.empty()) throw Error(ErrorKind::kInvalidArgument, "evaluate: empty test set");
  Evaluation ev;
  std::size_t correct = 0;
  for (const auto& ex : test_set) {
    const std::size_t p = predict(model.logits(ex));
    ev.predictions.push_back(p);
    correct += p == ex.label ? 1 : 0;
  }
  ev.accuracy = static_cast<double>(correct) / static_cast<double>(test_set.size());
  return ev;
}

MultiSeedResult multi_seed_run(const TrainConfig& config, const PreparedData& data, std::ostream* log,
                               unsigned workers) {
  config.validate();
  const std::size_t n = config.seeds.size();
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));

  // Seeds are independent; logs are buffered per seed and replayed in order
  // so the output does not depend on scheduling.
  std::vector<SeedRun> runs(n);
  std::vector<std::ostringstream> logs(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        runs[i].seed = config.seeds[i];
        runs[i].result = train(config, data.train, config.seeds[i], log ? &logs[i] : nullptr);
        runs[i].evaluation = evaluate(*runs[i].result.model, data.test);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (log) *log << logs[i].str();
    if (errors[i]) std::rethrow_exception(errors[i]);
  }

  MultiSeedResult out;
  std::vector<double> accs;
  for (auto& run : runs) {
    accs.push_back(run.evaluation.accuracy);
    out.runs.push_back(std::move(run));
  }
  out.mean_accuracy = stats::mean(accs);
  out.std_accuracy = stats::population_std(accs);
  for (std::size_t i = 1; i < out.runs.size(); ++i) {
    const auto& a = out.runs[i];
    const auto& b = out.runs[out.best];
    if (a.evaluation.accuracy > b.evaluation.accuracy ||
        (a.evaluation.accuracy == b.evaluation.accuracy && a.seed < b.seed)) {
      out.best = i;
    }
  }
  return out;
}

}  // namespace adcue
