#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "gazener/corpus/embeddings.hpp"
#include "gazener/corpus/labels.hpp"
#include "gazener/corpus/token.hpp"
#include "gazener/gaze/binning.hpp"
#include "gazener/gaze/raw_gaze_vector.hpp"
#include "gazener/nn/autodiff.hpp"
#include "gazener/nn/crf.hpp"
#include "gazener/nn/vocabulary.hpp"

namespace gazener::nn {

struct ModelConfig {
  int char_embed_dim = 25;
  int word_embed_dim = 100;
  int gaze_bins = gaze::kDefaultBinCount;
  int gaze_embed_dim = gaze::kDefaultBinCount;  // one dimension per quantile
  int char_lstm_hidden = 25;                    // per direction
  int word_lstm_hidden = 100;                   // per direction
  double dropout = 0.5;
  bool use_gaze = true;
  bool freeze_word_embeddings = false;
  double learning_rate = 0.01;
  double gradient_clip = 5.0;
  std::uint64_t seed = 1;

  // Throws ValidationError naming the offending field.
  void validate() const;

  int char_representation_dim() const noexcept { return 2 * char_lstm_hidden; }
  int base_input_dim() const noexcept { return char_representation_dim() + word_embed_dim; }
  int gaze_input_dim() const noexcept {
    return use_gaze ? static_cast<int>(gaze::kFeatureCount) * gaze_embed_dim : 0;
  }
  // Width of the per-token vector fed to the word-level BiLSTM.
  int token_input_dim() const noexcept { return base_input_dim() + gaze_input_dim(); }
};

struct TokenInput {
  int word = Vocabulary::kUnknown;
  std::vector<int> chars;
  gaze::BinnedGazeVector gaze;
};

struct LstmParams {
  int input = -1;      // 4H x D (for the word LSTM: the char/word block)
  int gaze = -1;       // 4H x 17*G, word LSTM with gaze only
  int recurrent = -1;  // 4H x H
  int bias = -1;       // 4H x 1
};

struct ParameterIds {
  int char_embeddings = -1;
  LstmParams char_forward, char_backward;
  int word_embeddings = -1;
  std::array<int, gaze::kFeatureCount> gaze_embeddings{};
  LstmParams word_forward, word_backward;
  int output_weights = -1;
  int output_bias = -1;
  int transitions = -1;
  int start = -1;
  int stop = -1;
};

// Character BiLSTM + word embeddings (+ 17 gaze embedding tables) -> word
// BiLSTM -> linear label scores -> CRF.
class TaggerModel {
 public:
  // Parameters are initialized deterministically from config.seed; each
  // tensor draws from its own stream keyed by its name, so the shared
  // tensors of a gaze and a gaze-free model built with one seed are equal.
  TaggerModel(ModelConfig config, Vocabulary words, Vocabulary chars,
              const corpus::EmbeddingTable* pretrained = nullptr);

  const ModelConfig& config() const noexcept { return config_; }
  const Vocabulary& words() const noexcept { return words_; }
  const Vocabulary& chars() const noexcept { return chars_; }
  ParameterSet& parameters() noexcept { return params_; }
  const ParameterSet& parameters() const noexcept { return params_; }
  const ParameterIds& ids() const noexcept { return ids_; }
  int label_count() const noexcept { return static_cast<int>(corpus::kTagCount); }

  TokenInput make_input(const corpus::Token& token, const gaze::BinnedGazeVector& gaze) const;
  // `gaze` may be empty for a gaze-free model (all-UNKNOWN is used).
  std::vector<TokenInput> make_inputs(const corpus::Sentence& sentence,
                                      std::span<const gaze::BinnedGazeVector> gaze) const;

 private:
  void initialize(const corpus::EmbeddingTable* pretrained);

  ModelConfig config_;
  Vocabulary words_;
  Vocabulary chars_;
  ParameterSet params_;
  ParameterIds ids_;
};

// Random streams consumed by one training step. The gaze stream is separate
// so that gaze and gaze-free runs see identical masks on the shared block.
struct DropoutStreams {
  std::mt19937_64* base = nullptr;
  std::mt19937_64* gaze = nullptr;
};

struct Encoding {
  Expr token_inputs;  // token_input_dim x T
  Expr emissions;     // labels x T
};

// Builds the forward graph for one sentence. Dropout is applied to the
// token representations only when `dropout` carries streams.
Encoding encode_sentence(Graph& graph, const TaggerModel& model, std::span<const TokenInput> inputs,
                         const DropoutStreams& dropout = {});

// CRF negative log-likelihood of `gold` under the encoded sentence.
Expr sentence_loss(Graph& graph, const TaggerModel& model, const Encoding& encoding,
                   std::span<const corpus::Tag> gold);

CrfScores crf_scores(const Graph& graph, const TaggerModel& model, const Encoding& encoding);

// Viterbi labels with dropout off. Read-only on the model.
std::vector<corpus::Tag> predict(const TaggerModel& model, std::span<const TokenInput> inputs);

}  // namespace gazener::nn
