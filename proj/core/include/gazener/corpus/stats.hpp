#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gazener/corpus/token.hpp"
#include "gazener/gaze/raw_gaze_vector.hpp"

namespace gazener::corpus {

struct CorpusStats {
  std::size_t sentences = 0;
  std::size_t tokens = 0;
  std::size_t unique_types = 0;  // lower-cased surfaces
  double mean_sentence_length = 0.0;
  double mean_word_length = 0.0;  // in code points
  // Over fixated whitespace units: mean single-fixation duration and mean
  // summed duration of all fixations (gaze duration). Zero without features.
  double mean_fixation_duration = 0.0;
  double mean_gaze_duration = 0.0;
  std::size_t fixated_words = 0;
};

// `group_features[s]` holds the per-whitespace-unit measures of sentence s;
// pass an empty span for a corpus without gaze.
CorpusStats corpus_stats(std::span<const Sentence> sentences,
                         std::span<const std::vector<gaze::RawGazeVector>> group_features = {});

}  // namespace gazener::corpus
