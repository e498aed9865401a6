#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gazener/corpus/embeddings.hpp"
#include "gazener/corpus/token.hpp"
#include "gazener/experiments/metrics.hpp"
#include "gazener/experiments/trainer.hpp"
#include "gazener/gaze/featurize.hpp"
#include "gazener/gaze/lexicon.hpp"
#include "gazener/nn/model.hpp"

namespace gazener::experiments {

// Which gaze input a run feeds the tagger.
enum class FeatureMode {
  None,            // gaze tables disabled (baseline)
  Token,           // per-token recorded measures, per-corpus bins
  TypeIndividual,  // type lexicon of this corpus' training split
  TypeCombined,    // a supplied lexicon, e.g. merged over several corpora
};

std::string_view feature_mode_name(FeatureMode mode) noexcept;
std::optional<FeatureMode> parse_feature_mode(std::string_view text) noexcept;

enum class ExternalMode { CrossValidation, Transfer };

struct ExperimentConfig {
  nn::ModelConfig model;
  TrainingOptions training;
  int folds = 10;
  int cross_folds = 5;
  std::uint64_t seed = 1;
  int threads = 1;  // folds trained concurrently; 0 = hardware concurrency
  const corpus::EmbeddingTable* pretrained = nullptr;
};

struct FoldResult {
  int fold_id = 0;
  EvalReport test;
  TrainingLog log;
  std::size_t train_sentences = 0;
  std::size_t dev_sentences = 0;
  std::size_t test_sentences = 0;
};

struct ExperimentReport {
  std::string name;  // corpus or "source->target"
  std::string mode;
  std::vector<FoldResult> folds;
  std::optional<double> lexicon_coverage;

  // Unweighted means over folds of the fold-level micro scores.
  Scores mean_micro() const;
  Scores mean_class(corpus::EntityClass cls) const;
  std::vector<double> fold_f1() const;
};

// Model seed of a fold; shared by every feature mode so runs are paired.
std::uint64_t fold_seed(std::uint64_t seed, int fold_id) noexcept;

// k-fold cross-validation (80/10/10 for k = 10) on one gaze corpus.
// `combined` is required for TypeCombined.
ExperimentReport run_individual_experiment(const gaze::FeaturizedCorpus& corpus, FeatureMode mode,
                                           const ExperimentConfig& config,
                                           const gaze::TypeLexicon* combined = nullptr);

// Train on all of `source` plus a 20% dev slice of `target`, test on the
// remaining 80%; repeated over cross_folds alternating slices. Token mode
// uses each corpus' own bins; TypeIndividual/TypeCombined use `lexicon`.
ExperimentReport run_cross_experiment(const gaze::FeaturizedCorpus& source, const gaze::FeaturizedCorpus& target,
                                      FeatureMode mode, const ExperimentConfig& config,
                                      const gaze::TypeLexicon* lexicon = nullptr);

// Corpus without recorded gaze. With a lexicon every token gets its type
// features (misses are all-UNKNOWN); without one the gaze tables are off.
// CrossValidation runs k-fold CV on `corpus`; Transfer trains on
// `gaze_corpora` with the cross-corpus dev/test alternation over `corpus`.
ExperimentReport run_external_experiment(std::span<const corpus::Sentence> corpus, const gaze::TypeLexicon* lexicon,
                                         ExternalMode mode, const ExperimentConfig& config,
                                         std::span<const gaze::FeaturizedCorpus> gaze_corpora = {});

}  // namespace gazener::experiments
