#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "gazener/corpus/averaged_gaze_file.hpp"
#include "gazener/corpus/fixation_file.hpp"
#include "gazener/corpus/token.hpp"
#include "gazener/gaze/binning.hpp"
#include "gazener/gaze/lexicon.hpp"

namespace gazener::gaze {

struct FeaturizedSentence {
  corpus::Sentence sentence;
  std::vector<BinnedGazeVector> gaze;  // one per token
  // Corpus-normalized values per token; empty when the corpus has no
  // recorded gaze (e.g. lexicon-featurized).
  std::vector<RawGazeVector> normalized;
};

struct FeaturizedCorpus {
  std::string corpus_id;
  int bin_count = kDefaultBinCount;
  std::vector<FeaturizedSentence> sentences;

  std::vector<corpus::Sentence> plain_sentences() const;
};

// Token-level raw vectors (split tokens share their unit's vector).
std::vector<std::vector<RawGazeVector>> token_features(std::span<const corpus::Sentence> sentences,
                                                       const corpus::FixationData& fixations);
std::vector<std::vector<RawGazeVector>> token_features(std::span<const corpus::Sentence> sentences,
                                                       const corpus::AveragedGaze& averaged);

struct FeaturizeResult {
  FeaturizedCorpus corpus;
  BinThresholds thresholds;
};

// Fits per-corpus thresholds on all token vectors and bins them; also keeps
// each token's corpus-normalized values for type aggregation.
FeaturizeResult featurize(std::span<const corpus::Sentence> sentences,
                          const std::vector<std::vector<RawGazeVector>>& raw, int bin_count,
                          const std::string& corpus_id);

// Gaze-free path: every token receives its type-lexicon vector.
FeaturizedCorpus featurize_with_lexicon(std::span<const corpus::Sentence> sentences,
                                        const TypeLexicon& lexicon, const std::string& corpus_id);

// Occurrence list for type aggregation: each token's corpus-normalized values.
// Throws ValidationError for a corpus without them.
CorpusOccurrences corpus_occurrences(const FeaturizedCorpus& corpus);
CorpusOccurrences corpus_occurrences(const FeaturizedCorpus& corpus, std::span<const int> sentence_ids);

// Token-file columns followed by 17 bin indices and, when present, the 17
// normalized values; tab-separated. The first line is a `#` header carrying
// the bin count and whether values follow.
void write_featurized(std::ostream& out, const FeaturizedCorpus& corpus);
void write_featurized_file(const std::filesystem::path& path, const FeaturizedCorpus& corpus);
FeaturizedCorpus read_featurized(std::istream& in, const std::string& corpus_id,
                                 const std::string& source_name = "<stream>");
FeaturizedCorpus read_featurized_file(const std::filesystem::path& path, std::string corpus_id = {});

}  // namespace gazener::gaze
