#include "gazener/experiments/trainer.hpp"

#include <cmath>
#include <random>
#include <unordered_map>
#include <unordered_set>

#include "gazener/error.hpp"
#include "gazener/experiments/folds.hpp"
#include "gazener/experiments/metrics.hpp"
#include "gazener/nn/optimizer.hpp"

namespace gazener::experiments {

namespace {

std::uint64_t derive(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t x = seed ^ (salt * 0x9E3779B97F4A7C15ULL);
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::vector<nn::Matrix> snapshot(const nn::ParameterSet& params) {
  std::vector<nn::Matrix> values;
  values.reserve(static_cast<std::size_t>(params.size()));
  for (const auto& p : params) values.push_back(p.value);
  return values;
}

void restore(nn::ParameterSet& params, std::vector<nn::Matrix>& values) {
  for (int id = 0; id < params.size(); ++id) params[id].value = std::move(values[static_cast<std::size_t>(id)]);
}

}  // namespace

bool EarlyStopping::observe(int epoch, double dev_score) {
  if (dev_score > best_score_) {
    best_score_ = dev_score;
    best_epoch_ = epoch;
    epochs_since_best_ = 0;
    return true;
  }
  ++epochs_since_best_;
  return false;
}

double train_step(nn::TaggerModel& model, const Example& example, nn::Gradients& gradients,
                  const nn::DropoutStreams& dropout) {
  nn::Graph graph(model.parameters());
  const auto encoding = nn::encode_sentence(graph, model, example.inputs, dropout);
  const auto loss = nn::sentence_loss(graph, model, encoding, example.gold);
  const double value = graph.scalar(loss);
  if (!std::isfinite(value)) throw NumericError("non-finite sentence loss");
  gradients.clear();
  graph.backward(loss, gradients);
  const auto& cfg = model.config();
  nn::sgd_step(model.parameters(), gradients, cfg.learning_rate, cfg.gradient_clip);
  return value;
}

std::vector<std::vector<corpus::Tag>> predict_all(const nn::TaggerModel& model, std::span<const Example> examples) {
  std::vector<std::vector<corpus::Tag>> out;
  out.reserve(examples.size());
  for (const auto& example : examples) {
    auto tags = nn::predict(model, example.inputs);
    corpus::repair_iob(tags);
    out.push_back(std::move(tags));
  }
  return out;
}

double micro_f1(const nn::TaggerModel& model, std::span<const Example> examples) {
  std::vector<std::vector<corpus::Tag>> gold;
  gold.reserve(examples.size());
  for (const auto& e : examples) gold.push_back(e.gold);
  const auto predicted = predict_all(model, examples);
  return evaluate(gold, predicted).micro.f1();
}

TrainingLog train_with_early_stopping(nn::TaggerModel& model, std::span<const Example> train,
                                      std::span<const Example> dev, const TrainingOptions& options) {
  if (train.empty() || dev.empty()) throw ValidationError("training needs non-empty train and dev splits");
  if (options.max_epochs < 1 || options.patience < 1) {
    throw ValidationError("max_epochs and patience must be positive");
  }
  const std::uint64_t seed = model.config().seed;
  std::mt19937_64 dropout_base(derive(seed, 1));
  std::mt19937_64 dropout_gaze(derive(seed, 2));
  std::mt19937_64 unknown_rng(derive(seed, 3));
  const nn::DropoutStreams dropout{&dropout_base, &dropout_gaze};

  std::unordered_map<int, int> frequency;
  for (const auto& e : train) {
    for (const auto& input : e.inputs) ++frequency[input.word];
  }
  std::unordered_set<int> singletons;
  for (const auto& [word, count] : frequency) {
    if (count == 1 && word != nn::Vocabulary::kUnknown) singletons.insert(word);
  }
  std::bernoulli_distribution replace(options.singleton_unknown_rate);

  nn::Gradients gradients(model.parameters());
  EarlyStopping stopping(options.patience);
  std::vector<nn::Matrix> best = snapshot(model.parameters());
  TrainingLog log;
  for (int epoch = 1; epoch <= options.max_epochs; ++epoch) {
    const auto order = shuffled_indices(static_cast<int>(train.size()), derive(seed, 100 + static_cast<std::uint64_t>(epoch)));
    double loss = 0.0;
    try {
      for (const int index : order) {
        const Example& original = train[static_cast<std::size_t>(index)];
        Example example = original;
        for (auto& input : example.inputs) {
          if (singletons.contains(input.word) && replace(unknown_rng)) input.word = nn::Vocabulary::kUnknown;
        }
        loss += train_step(model, example, gradients, dropout);
      }
    } catch (const NumericError& e) {
      throw NumericError(std::string(e.what()) + " in epoch " + std::to_string(epoch) +
                         "; last finite epoch " + std::to_string(epoch - 1));
    }
    const double dev_f1 = micro_f1(model, dev);
    log.epochs.push_back({epoch, loss, dev_f1});
    if (stopping.observe(epoch, dev_f1)) best = snapshot(model.parameters());
    log.stopped_epoch = epoch;
    if (stopping.should_stop()) break;
  }
  restore(model.parameters(), best);
  log.best_epoch = stopping.best_epoch();
  log.best_dev_f1 = stopping.best_score();
  return log;
}

}  // namespace gazener::experiments
