#include "gazener/nn/model.hpp"

#include <cmath>
#include <optional>
#include <string>

#include "gazener/error.hpp"

namespace gazener::nn {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const char c : text) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::mt19937_64 stream_for(std::uint64_t seed, std::string_view name) {
  return std::mt19937_64(splitmix64(seed ^ fnv1a(name)));
}

Matrix glorot(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  const double bound = std::sqrt(6.0 / static_cast<double>(rows + cols));
  std::uniform_real_distribution<double> dist(-bound, bound);
  Matrix m(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    for (Eigen::Index r = 0; r < rows; ++r) m(r, c) = dist(rng);
  }
  return m;
}

Matrix normal_columns(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> dist(0.0, 0.1);
  Matrix m(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    for (Eigen::Index r = 0; r < rows; ++r) m(r, c) = dist(rng);
  }
  return m;
}

Matrix dropout_mask(Eigen::Index rows, Eigen::Index cols, double rate, std::mt19937_64& rng) {
  const double keep = 1.0 - rate;
  std::bernoulli_distribution draw(keep);
  Matrix m(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    for (Eigen::Index r = 0; r < rows; ++r) m(r, c) = draw(rng) ? 1.0 / keep : 0.0;
  }
  return m;
}

}  // namespace

void ModelConfig::validate() const {
  auto require = [](bool ok, const char* field, const char* what) {
    if (!ok) throw ValidationError(std::string("model config: ") + field + " " + what);
  };
  require(char_embed_dim > 0, "char_embed_dim", "must be positive");
  require(word_embed_dim > 0, "word_embed_dim", "must be positive");
  require(gaze_bins >= 2, "gaze_bins", "must be at least 2");
  require(gaze_embed_dim > 0, "gaze_embed_dim", "must be positive");
  require(char_lstm_hidden > 0, "char_lstm_hidden", "must be positive");
  require(word_lstm_hidden > 0, "word_lstm_hidden", "must be positive");
  require(dropout >= 0.0 && dropout < 1.0, "dropout", "must be in [0, 1)");
  require(learning_rate >= 0.0 && std::isfinite(learning_rate), "learning_rate", "must be finite and >= 0");
  require(gradient_clip > 0.0, "gradient_clip", "must be positive");
}

TaggerModel::TaggerModel(ModelConfig config, Vocabulary words, Vocabulary chars,
                         const corpus::EmbeddingTable* pretrained)
    : config_(config), words_(std::move(words)), chars_(std::move(chars)) {
  config_.validate();
  if (pretrained != nullptr && pretrained->dimension() != static_cast<std::size_t>(config_.word_embed_dim)) {
    throw ValidationError("pre-trained vectors have dimension " + std::to_string(pretrained->dimension()) +
                          ", word_embed_dim is " + std::to_string(config_.word_embed_dim));
  }
  initialize(pretrained);
}

void TaggerModel::initialize(const corpus::EmbeddingTable* pretrained) {
  const std::uint64_t seed = config_.seed;
  const int labels = label_count();

  auto add_lstm = [&](const std::string& prefix, int input_dim, int gaze_dim, int hidden) {
    LstmParams p;
    auto rng = stream_for(seed, prefix + ".input");
    p.input = params_.add(prefix + ".input", glorot(4 * hidden, input_dim, rng));
    if (gaze_dim > 0) {
      rng = stream_for(seed, prefix + ".gaze");
      p.gaze = params_.add(prefix + ".gaze", glorot(4 * hidden, gaze_dim, rng));
    }
    rng = stream_for(seed, prefix + ".recurrent");
    p.recurrent = params_.add(prefix + ".recurrent", glorot(4 * hidden, hidden, rng));
    p.bias = params_.add(prefix + ".bias", Matrix::Zero(4 * hidden, 1));
    return p;
  };

  {
    auto rng = stream_for(seed, "char.embeddings");
    ids_.char_embeddings =
        params_.add("char.embeddings", normal_columns(config_.char_embed_dim, chars_.size(), rng), true);
  }
  ids_.char_forward = add_lstm("char.forward", config_.char_embed_dim, 0, config_.char_lstm_hidden);
  ids_.char_backward = add_lstm("char.backward", config_.char_embed_dim, 0, config_.char_lstm_hidden);

  {
    auto rng = stream_for(seed, "word.embeddings");
    Matrix table = normal_columns(config_.word_embed_dim, words_.size(), rng);
    if (pretrained != nullptr) {
      for (int id = 0; id < words_.size(); ++id) {
        if (const auto vec = pretrained->find(words_.item(id))) {
          for (int r = 0; r < config_.word_embed_dim; ++r) table(r, id) = (*vec)[static_cast<std::size_t>(r)];
        }
      }
    }
    ids_.word_embeddings = params_.add("word.embeddings", std::move(table), true);
    params_[ids_.word_embeddings].trainable = !config_.freeze_word_embeddings;
  }

  ids_.gaze_embeddings.fill(-1);
  if (config_.use_gaze) {
    for (std::size_t f = 0; f < gaze::kFeatureCount; ++f) {
      const std::string name = "gaze." + std::string(gaze::kFeatureNames[f]);
      auto rng = stream_for(seed, name);
      Matrix table = normal_columns(config_.gaze_embed_dim, config_.gaze_bins + 1, rng);
      table.col(config_.gaze_bins).setZero();  // UNKNOWN, pinned by a mask in encode_sentence
      ids_.gaze_embeddings[f] = params_.add(name, std::move(table), true);
    }
  }

  const int hidden = config_.word_lstm_hidden;
  ids_.word_forward = add_lstm("word.forward", config_.base_input_dim(), config_.gaze_input_dim(), hidden);
  ids_.word_backward = add_lstm("word.backward", config_.base_input_dim(), config_.gaze_input_dim(), hidden);

  {
    auto rng = stream_for(seed, "output.weights");
    ids_.output_weights = params_.add("output.weights", glorot(labels, 2 * hidden, rng));
    ids_.output_bias = params_.add("output.bias", Matrix::Zero(labels, 1));
  }
  {
    auto rng = stream_for(seed, "crf.transitions");
    ids_.transitions = params_.add("crf.transitions", glorot(labels, labels, rng));
    ids_.start = params_.add("crf.start", Matrix::Zero(labels, 1));
    ids_.stop = params_.add("crf.stop", Matrix::Zero(labels, 1));
  }
}

TokenInput TaggerModel::make_input(const corpus::Token& token, const gaze::BinnedGazeVector& gaze) const {
  TokenInput input;
  input.word = lookup_word(words_, token);
  for (const auto& c : corpus::utf8_characters(token.surface)) input.chars.push_back(chars_.find(c));
  if (input.chars.empty()) input.chars.push_back(Vocabulary::kUnknown);
  input.gaze = gaze;
  return input;
}

std::vector<TokenInput> TaggerModel::make_inputs(const corpus::Sentence& sentence,
                                                 std::span<const gaze::BinnedGazeVector> gaze) const {
  if (!gaze.empty() && gaze.size() != sentence.tokens.size()) {
    throw ValidationError("sentence " + std::to_string(sentence.sent_id) + ": gaze vector count differs from tokens");
  }
  const auto unknown = gaze::BinnedGazeVector::all_unknown(config_.gaze_bins);
  std::vector<TokenInput> inputs;
  inputs.reserve(sentence.tokens.size());
  for (std::size_t t = 0; t < sentence.tokens.size(); ++t) {
    inputs.push_back(make_input(sentence.tokens[t], gaze.empty() ? unknown : gaze[t]));
  }
  return inputs;
}

Encoding encode_sentence(Graph& graph, const TaggerModel& model, std::span<const TokenInput> inputs,
                         const DropoutStreams& dropout) {
  const ModelConfig& cfg = model.config();
  const ParameterIds& ids = model.ids();
  const int steps = static_cast<int>(inputs.size());
  if (steps == 0) throw ValidationError("encode_sentence: empty sentence");

  const Expr cf_in = graph.parameter(ids.char_forward.input);
  const Expr cf_rec = graph.parameter(ids.char_forward.recurrent);
  const Expr cf_bias = graph.parameter(ids.char_forward.bias);
  const Expr cb_in = graph.parameter(ids.char_backward.input);
  const Expr cb_rec = graph.parameter(ids.char_backward.recurrent);
  const Expr cb_bias = graph.parameter(ids.char_backward.bias);

  std::vector<Expr> char_forward;
  std::vector<Expr> char_backward;
  std::vector<int> word_ids;
  char_forward.reserve(inputs.size());
  char_backward.reserve(inputs.size());
  for (const auto& input : inputs) {
    const Expr chars = graph.gather(ids.char_embeddings, input.chars);
    const int last = static_cast<int>(input.chars.size()) - 1;
    const Expr fwd = graph.lstm(graph.add_column(graph.matmul(cf_in, chars), cf_bias), cf_rec, false);
    const Expr bwd = graph.lstm(graph.add_column(graph.matmul(cb_in, chars), cb_bias), cb_rec, true);
    char_forward.push_back(graph.column(fwd, last));
    char_backward.push_back(graph.column(bwd, 0));
    word_ids.push_back(input.word);
  }
  const Expr base_parts[] = {graph.concat_cols(char_forward), graph.concat_cols(char_backward),
                             graph.gather(ids.word_embeddings, word_ids)};
  Expr base = graph.concat_rows(base_parts);
  const bool train = dropout.base != nullptr && cfg.dropout > 0.0;
  if (train) {
    base = graph.mask(base, dropout_mask(cfg.base_input_dim(), steps, cfg.dropout, *dropout.base));
  }

  std::optional<Expr> gaze_block;
  if (cfg.use_gaze) {
    const int g = cfg.gaze_embed_dim;
    std::vector<Expr> tables;
    std::vector<int> bins(inputs.size());
    // Zero where a bin is UNKNOWN: the placeholder contributes nothing and
    // receives no gradient, so an all-UNKNOWN input is exactly inert.
    Matrix keep = Matrix::Ones(cfg.gaze_input_dim(), steps);
    bool any_unknown = false;
    for (std::size_t f = 0; f < gaze::kFeatureCount; ++f) {
      for (std::size_t t = 0; t < inputs.size(); ++t) {
        const int b = inputs[t].gaze[f];
        if (b < 0 || b > cfg.gaze_bins) throw ValidationError("encode_sentence: gaze bin out of range");
        bins[t] = b;
        if (b == cfg.gaze_bins) {
          keep.block(static_cast<Eigen::Index>(f) * g, static_cast<Eigen::Index>(t), g, 1).setZero();
          any_unknown = true;
        }
      }
      tables.push_back(graph.gather(ids.gaze_embeddings[f], bins));
    }
    gaze_block = graph.concat_rows(tables);
    if (train) {
      std::mt19937_64& rng = dropout.gaze != nullptr ? *dropout.gaze : *dropout.base;
      keep = keep.cwiseProduct(dropout_mask(cfg.gaze_input_dim(), steps, cfg.dropout, rng));
      any_unknown = true;
    }
    if (any_unknown) gaze_block = graph.mask(*gaze_block, std::move(keep));
  }

  Encoding encoding;
  if (gaze_block) {
    const Expr parts[] = {base, *gaze_block};
    encoding.token_inputs = graph.concat_rows(parts);
  } else {
    encoding.token_inputs = base;
  }

  auto word_lstm = [&](const LstmParams& p, bool reverse) {
    Expr pre = graph.matmul(graph.parameter(p.input), base);
    if (gaze_block) pre = graph.add(pre, graph.matmul(graph.parameter(p.gaze), *gaze_block));
    pre = graph.add_column(pre, graph.parameter(p.bias));
    return graph.lstm(pre, graph.parameter(p.recurrent), reverse);
  };
  const Expr context_parts[] = {word_lstm(ids.word_forward, false), word_lstm(ids.word_backward, true)};
  const Expr context = graph.concat_rows(context_parts);
  encoding.emissions = graph.add_column(graph.matmul(graph.parameter(ids.output_weights), context),
                                        graph.parameter(ids.output_bias));
  return encoding;
}

Expr sentence_loss(Graph& graph, const TaggerModel& model, const Encoding& encoding,
                   std::span<const corpus::Tag> gold) {
  std::vector<int> path;
  path.reserve(gold.size());
  for (const auto tag : gold) path.push_back(static_cast<int>(corpus::tag_index(tag)));
  const auto& ids = model.ids();
  return graph.crf_nll(encoding.emissions, graph.parameter(ids.transitions), graph.parameter(ids.start),
                       graph.parameter(ids.stop), std::move(path));
}

CrfScores crf_scores(const Graph& graph, const TaggerModel& model, const Encoding& encoding) {
  const auto& params = model.parameters();
  const auto& ids = model.ids();
  return CrfScores{graph.value(encoding.emissions), params[ids.transitions].value,
                   params[ids.start].value.col(0), params[ids.stop].value.col(0)};
}

std::vector<corpus::Tag> predict(const TaggerModel& model, std::span<const TokenInput> inputs) {
  Graph graph(model.parameters());
  const Encoding encoding = encode_sentence(graph, model, inputs);
  const Path path = viterbi_decode(crf_scores(graph, model, encoding));
  std::vector<corpus::Tag> tags;
  tags.reserve(path.labels.size());
  for (const int label : path.labels) tags.push_back(corpus::tag_from_index(static_cast<std::size_t>(label)));
  return tags;
}

}  // namespace gazener::nn
