#pragma once

#include <span>
#include <vector>

#include "gazener/corpus/fixation_file.hpp"
#include "gazener/corpus/token.hpp"
#include "gazener/gaze/raw_gaze_vector.hpp"

namespace gazener::gaze {

// One fixation in a reader's chronological scan path over a sentence.
struct Fixation {
  int word = 0;  // whitespace group
  double duration_ms = 0.0;
};

// Measures of one reader on one word.
struct ReaderWordMeasures {
  bool fixated = false;
  int n_fixations = 0;
  double first_fixation_duration = 0.0;
  double first_pass_duration = 0.0;
  double total_duration = 0.0;
  int n_refixations = 0;
  bool reread = false;  // fixated at least twice
  double regression_from_duration = 0.0;
};

// First pass is the run of consecutive fixations starting at the first
// fixation on the word. Regression-from duration sums every fixation that
// follows a saccade from the word to an earlier word, up to (excluding) the
// next fixation at or right of the word. Throws std::out_of_range when
// `word_index` is not in [0, word_count).
ReaderWordMeasures reader_word_measures(std::span<const Fixation> scan_path, int word_index,
                                        int word_count);

std::vector<Fixation> scan_path(std::span<const corpus::FixationEvent> events);

// Reader-averaged word-local measures. Probabilities are over all
// `reader_count` readers; duration and count features are means over the
// readers who fixated the word (0 when nobody did). Context slots are left
// at zero; see add_context_features. Readers absent from `records` count as
// non-fixating. Throws std::invalid_argument if reader_count is 0 or smaller
// than the number of records.
RawGazeVector average_readers(std::span<const ReaderWordMeasures> records, int reader_count);

// Fixation duration used for a neighbour's context slot.
double context_duration(const RawGazeVector& neighbour) noexcept;

// Fills the w-2, w-1, w+1, w+2 probability and duration slots of each word
// from its neighbours; slots past the sentence boundary become kUnknown.
std::vector<RawGazeVector> add_context_features(std::span<const RawGazeVector> words);

// Full per-sentence pipeline: per-reader measures, averaging over every reader
// in `fixations`, then context. One vector per whitespace group.
std::vector<RawGazeVector> sentence_group_features(const corpus::Sentence& sentence,
                                                   const corpus::FixationData& fixations);

}  // namespace gazener::gaze
