#include "gazener/experiments/experiment.hpp"

#include <algorithm>
#include <exception>
#include <mutex>
#include <thread>

#include "gazener/error.hpp"
#include "gazener/experiments/folds.hpp"

namespace gazener::experiments {

namespace {

using GazeRows = std::vector<gaze::BinnedGazeVector>;

// Sentences of one split with the gaze rows the model will see (empty rows
// mean all-UNKNOWN).
struct Split {
  std::vector<corpus::Sentence> sentences;
  std::vector<GazeRows> gaze;

  void add(const corpus::Sentence& sentence, GazeRows rows) {
    sentences.push_back(sentence);
    gaze.push_back(std::move(rows));
  }
};

struct FoldInput {
  int fold_id = 0;
  Split train, dev, test;
  bool use_gaze = false;
};

GazeRows lexicon_rows(const corpus::Sentence& sentence, const gaze::TypeLexicon& lexicon) {
  GazeRows rows;
  rows.reserve(sentence.tokens.size());
  for (const auto& token : sentence.tokens) rows.push_back(gaze::lookup_type_features(token, lexicon));
  return rows;
}

std::vector<Example> examples_of(const nn::TaggerModel& model, const Split& split) {
  std::vector<Example> out;
  out.reserve(split.sentences.size());
  for (std::size_t i = 0; i < split.sentences.size(); ++i) {
    const auto& sentence = split.sentences[i];
    out.push_back({model.make_inputs(sentence, split.gaze[i]), sentence.labels()});
  }
  return out;
}

FoldResult run_fold(const FoldInput& input, const ExperimentConfig& config) {
  nn::ModelConfig model_config = config.model;
  model_config.use_gaze = input.use_gaze;
  model_config.seed = fold_seed(config.seed, input.fold_id);
  auto words = nn::build_word_vocabulary(input.train.sentences, config.pretrained);
  auto chars = nn::build_char_vocabulary(input.train.sentences);
  nn::TaggerModel model(model_config, std::move(words), std::move(chars), config.pretrained);

  const auto train = examples_of(model, input.train);
  const auto dev = examples_of(model, input.dev);
  const auto test = examples_of(model, input.test);

  FoldResult result;
  result.fold_id = input.fold_id;
  result.log = train_with_early_stopping(model, train, dev, config.training);
  std::vector<std::vector<corpus::Tag>> gold;
  gold.reserve(test.size());
  for (const auto& e : test) gold.push_back(e.gold);
  result.test = evaluate(gold, predict_all(model, test));
  result.train_sentences = train.size();
  result.dev_sentences = dev.size();
  result.test_sentences = test.size();
  return result;
}

// Folds are independent; results are ordered by fold id whatever the
// completion order. The first failing fold (by id) is rethrown.
std::vector<FoldResult> run_folds(const std::vector<FoldInput>& inputs, const ExperimentConfig& config) {
  const std::size_t n = inputs.size();
  std::vector<FoldResult> results(n);
  std::vector<std::exception_ptr> errors(n);
  unsigned threads = config.threads > 0 ? static_cast<unsigned>(config.threads) : std::thread::hardware_concurrency();
  threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(std::max<std::size_t>(n, 1)));

  std::mutex mutex;
  std::size_t next = 0;
  auto worker = [&] {
    for (;;) {
      std::size_t index = 0;
      {
        std::lock_guard lock(mutex);
        if (next >= n) return;
        index = next++;
      }
      try {
        results[index] = run_fold(inputs[index], config);
      } catch (...) {
        errors[index] = std::current_exception();
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (const auto& error : errors) {
    if (error) std::rethrow_exception(error);
  }
  return results;
}

void check_bins(int bins, const ExperimentConfig& config, const char* what) {
  if (bins != config.model.gaze_bins) {
    throw ValidationError(std::string(what) + " has " + std::to_string(bins) + " bins but gaze_bins is " +
                          std::to_string(config.model.gaze_bins));
  }
}

}  // namespace

std::string_view feature_mode_name(FeatureMode mode) noexcept {
  switch (mode) {
    case FeatureMode::None: return "none";
    case FeatureMode::Token: return "token";
    case FeatureMode::TypeIndividual: return "type_individual";
    case FeatureMode::TypeCombined: return "type_combined";
  }
  return "none";
}

std::optional<FeatureMode> parse_feature_mode(std::string_view text) noexcept {
  for (auto mode : {FeatureMode::None, FeatureMode::Token, FeatureMode::TypeIndividual, FeatureMode::TypeCombined}) {
    if (text == feature_mode_name(mode)) return mode;
  }
  if (text == "type") return FeatureMode::TypeCombined;
  return std::nullopt;
}

Scores ExperimentReport::mean_micro() const {
  Scores mean;
  if (folds.empty()) return mean;
  for (const auto& f : folds) {
    const auto s = f.test.micro_scores();
    mean.precision += s.precision;
    mean.recall += s.recall;
    mean.f1 += s.f1;
  }
  const double k = static_cast<double>(folds.size());
  return {mean.precision / k, mean.recall / k, mean.f1 / k};
}

Scores ExperimentReport::mean_class(corpus::EntityClass cls) const {
  Scores mean;
  if (folds.empty()) return mean;
  for (const auto& f : folds) {
    const auto s = f.test.class_scores(cls);
    mean.precision += s.precision;
    mean.recall += s.recall;
    mean.f1 += s.f1;
  }
  const double k = static_cast<double>(folds.size());
  return {mean.precision / k, mean.recall / k, mean.f1 / k};
}

std::vector<double> ExperimentReport::fold_f1() const {
  std::vector<double> out;
  out.reserve(folds.size());
  for (const auto& f : folds) out.push_back(f.test.micro_scores().f1);
  return out;
}

std::uint64_t fold_seed(std::uint64_t seed, int fold_id) noexcept {
  std::uint64_t x = seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(fold_id + 1);
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

ExperimentReport run_individual_experiment(const gaze::FeaturizedCorpus& corpus, FeatureMode mode,
                                           const ExperimentConfig& config, const gaze::TypeLexicon* combined) {
  config.model.validate();
  if (mode == FeatureMode::TypeCombined && combined == nullptr) {
    throw ValidationError("feature_mode type_combined needs a lexicon");
  }
  if (mode == FeatureMode::Token) check_bins(corpus.bin_count, config, "corpus");
  if (mode == FeatureMode::TypeCombined) check_bins(combined->bin_count, config, "lexicon");

  const auto plans = make_folds(static_cast<int>(corpus.sentences.size()), config.folds, config.seed);
  std::vector<FoldInput> inputs;
  inputs.reserve(plans.size());
  for (const auto& plan : plans) {
    FoldInput input;
    input.fold_id = plan.fold_id;
    input.use_gaze = mode != FeatureMode::None;
    std::optional<gaze::TypeLexicon> individual;
    if (mode == FeatureMode::TypeIndividual) {
      individual = gaze::build_type_lexicon(std::vector{gaze::corpus_occurrences(corpus, plan.train)},
                                            config.model.gaze_bins);
    }
    const gaze::TypeLexicon* lexicon = individual ? &*individual : combined;
    auto fill = [&](Split& split, const std::vector<int>& ids) {
      for (const int id : ids) {
        const auto& fs = corpus.sentences[static_cast<std::size_t>(id)];
        switch (mode) {
          case FeatureMode::None: split.add(fs.sentence, {}); break;
          case FeatureMode::Token: split.add(fs.sentence, fs.gaze); break;
          default: split.add(fs.sentence, lexicon_rows(fs.sentence, *lexicon)); break;
        }
      }
    };
    fill(input.train, plan.train);
    fill(input.dev, plan.dev);
    fill(input.test, plan.test);
    inputs.push_back(std::move(input));
  }

  ExperimentReport report;
  report.name = corpus.corpus_id;
  report.mode = std::string(feature_mode_name(mode));
  if (mode == FeatureMode::TypeCombined) report.lexicon_coverage = gaze::lexicon_coverage(corpus.plain_sentences(), *combined);
  report.folds = run_folds(inputs, config);
  return report;
}

ExperimentReport run_cross_experiment(const gaze::FeaturizedCorpus& source, const gaze::FeaturizedCorpus& target,
                                      FeatureMode mode, const ExperimentConfig& config,
                                      const gaze::TypeLexicon* lexicon) {
  config.model.validate();
  const bool type_mode = mode == FeatureMode::TypeIndividual || mode == FeatureMode::TypeCombined;
  if (type_mode && lexicon == nullptr) throw ValidationError("type feature mode needs a lexicon");
  if (mode == FeatureMode::Token) {
    check_bins(source.bin_count, config, "source corpus");
    check_bins(target.bin_count, config, "target corpus");
  }
  if (type_mode) check_bins(lexicon->bin_count, config, "lexicon");

  auto rows = [&](const gaze::FeaturizedSentence& fs) -> GazeRows {
    if (mode == FeatureMode::None) return {};
    if (mode == FeatureMode::Token) return fs.gaze;
    return lexicon_rows(fs.sentence, *lexicon);
  };

  Split train;
  for (const auto& fs : source.sentences) train.add(fs.sentence, rows(fs));

  const auto plans = make_cross_folds(static_cast<int>(target.sentences.size()), config.cross_folds, config.seed);
  std::vector<FoldInput> inputs;
  inputs.reserve(plans.size());
  for (const auto& plan : plans) {
    FoldInput input;
    input.fold_id = plan.fold_id;
    input.use_gaze = mode != FeatureMode::None;
    input.train = train;
    for (const int id : plan.dev) input.dev.add(target.sentences[static_cast<std::size_t>(id)].sentence, rows(target.sentences[static_cast<std::size_t>(id)]));
    for (const int id : plan.test) input.test.add(target.sentences[static_cast<std::size_t>(id)].sentence, rows(target.sentences[static_cast<std::size_t>(id)]));
    inputs.push_back(std::move(input));
  }

  ExperimentReport report;
  report.name = source.corpus_id + "->" + target.corpus_id;
  report.mode = std::string(feature_mode_name(mode));
  if (type_mode) report.lexicon_coverage = gaze::lexicon_coverage(target.plain_sentences(), *lexicon);
  report.folds = run_folds(inputs, config);
  return report;
}

ExperimentReport run_external_experiment(std::span<const corpus::Sentence> corpus, const gaze::TypeLexicon* lexicon,
                                         ExternalMode mode, const ExperimentConfig& config,
                                         std::span<const gaze::FeaturizedCorpus> gaze_corpora) {
  config.model.validate();
  if (lexicon != nullptr) check_bins(lexicon->bin_count, config, "lexicon");
  if (mode == ExternalMode::Transfer && gaze_corpora.empty()) {
    throw ValidationError("transfer mode needs at least one gaze corpus");
  }
  auto rows = [&](const corpus::Sentence& sentence) -> GazeRows {
    if (lexicon == nullptr) return {};
    return lexicon_rows(sentence, *lexicon);
  };

  std::vector<FoldInput> inputs;
  if (mode == ExternalMode::CrossValidation) {
    const auto plans = make_folds(static_cast<int>(corpus.size()), config.folds, config.seed);
    for (const auto& plan : plans) {
      FoldInput input;
      input.fold_id = plan.fold_id;
      input.use_gaze = lexicon != nullptr;
      for (const int id : plan.train) input.train.add(corpus[static_cast<std::size_t>(id)], rows(corpus[static_cast<std::size_t>(id)]));
      for (const int id : plan.dev) input.dev.add(corpus[static_cast<std::size_t>(id)], rows(corpus[static_cast<std::size_t>(id)]));
      for (const int id : plan.test) input.test.add(corpus[static_cast<std::size_t>(id)], rows(corpus[static_cast<std::size_t>(id)]));
      inputs.push_back(std::move(input));
    }
  } else {
    // Gaze corpora train through the same lexicon the target sees, so the
    // tagger never depends on recorded gaze at test time.
    Split train;
    for (const auto& gc : gaze_corpora) {
      for (const auto& fs : gc.sentences) train.add(fs.sentence, rows(fs.sentence));
    }
    const auto plans = make_cross_folds(static_cast<int>(corpus.size()), config.cross_folds, config.seed);
    for (const auto& plan : plans) {
      FoldInput input;
      input.fold_id = plan.fold_id;
      input.use_gaze = lexicon != nullptr;
      input.train = train;
      for (const int id : plan.dev) input.dev.add(corpus[static_cast<std::size_t>(id)], rows(corpus[static_cast<std::size_t>(id)]));
      for (const int id : plan.test) input.test.add(corpus[static_cast<std::size_t>(id)], rows(corpus[static_cast<std::size_t>(id)]));
      inputs.push_back(std::move(input));
    }
  }

  ExperimentReport report;
  report.name = corpus.empty() ? std::string("external") : corpus.front().corpus_id;
  if (mode == ExternalMode::Transfer) report.name = "gaze->" + report.name;
  report.mode = lexicon != nullptr ? "type_combined" : "none";
  if (lexicon != nullptr) report.lexicon_coverage = gaze::lexicon_coverage(corpus, *lexicon);
  report.folds = run_folds(inputs, config);
  return report;
}

}  // namespace gazener::experiments
