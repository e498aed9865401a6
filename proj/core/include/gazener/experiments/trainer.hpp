#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "gazener/corpus/labels.hpp"
#include "gazener/nn/model.hpp"

namespace gazener::experiments {

// A sentence ready for the tagger.
struct Example {
  std::vector<nn::TokenInput> inputs;
  std::vector<corpus::Tag> gold;
};

struct TrainingOptions {
  int max_epochs = 100;
  int patience = 20;
  // Words seen once in training are replaced by the unknown word with this
  // probability while training, so the unknown embedding gets trained.
  double singleton_unknown_rate = 0.5;
};

// Early-stopping bookkeeping: improvement means strictly higher dev F, so
// the earliest epoch wins ties.
class EarlyStopping {
 public:
  explicit EarlyStopping(int patience) : patience_(patience) {}

  // Returns true when this epoch is the new best.
  bool observe(int epoch, double dev_score);
  bool should_stop() const noexcept { return epochs_since_best_ >= patience_; }
  int best_epoch() const noexcept { return best_epoch_; }
  double best_score() const noexcept { return best_score_; }

 private:
  int patience_;
  int best_epoch_ = 0;
  double best_score_ = -1.0;
  int epochs_since_best_ = 0;
};

struct EpochRecord {
  int epoch = 0;
  double train_loss = 0.0;
  double dev_f1 = 0.0;
};

struct TrainingLog {
  std::vector<EpochRecord> epochs;
  int best_epoch = 0;
  double best_dev_f1 = 0.0;
  int stopped_epoch = 0;
};

// Per-epoch SGD over shuffled training sentences; dev micro-F after each
// epoch; the model is left holding the best-epoch parameters. Throws
// NumericError (with the last finite epoch) on divergence.
TrainingLog train_with_early_stopping(nn::TaggerModel& model, std::span<const Example> train,
                                      std::span<const Example> dev, const TrainingOptions& options);

// One SGD update on one sentence; returns the sentence loss.
double train_step(nn::TaggerModel& model, const Example& example, nn::Gradients& gradients,
                  const nn::DropoutStreams& dropout);

// Viterbi tags for each example, IOB-repaired.
std::vector<std::vector<corpus::Tag>> predict_all(const nn::TaggerModel& model, std::span<const Example> examples);

double micro_f1(const nn::TaggerModel& model, std::span<const Example> examples);

}  // namespace gazener::experiments
