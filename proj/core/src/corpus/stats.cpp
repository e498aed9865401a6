#include "gazener/corpus/stats.hpp"

#include <unordered_set>

namespace gazener::corpus {

CorpusStats corpus_stats(std::span<const Sentence> sentences,
                         std::span<const std::vector<gaze::RawGazeVector>> group_features) {
  CorpusStats stats;
  stats.sentences = sentences.size();
  std::unordered_set<std::string> types;
  std::size_t characters = 0;
  for (const auto& sentence : sentences) {
    stats.tokens += sentence.tokens.size();
    for (const auto& token : sentence.tokens) {
      types.insert(to_lower(token.surface));
      characters += utf8_characters(token.surface).size();
    }
  }
  stats.unique_types = types.size();
  if (stats.sentences > 0) {
    stats.mean_sentence_length =
        static_cast<double>(stats.tokens) / static_cast<double>(stats.sentences);
  }
  if (stats.tokens > 0) {
    stats.mean_word_length = static_cast<double>(characters) / static_cast<double>(stats.tokens);
  }

  double fixation_sum = 0.0;
  double gaze_sum = 0.0;
  for (const auto& groups : group_features) {
    for (const auto& v : groups) {
      if (!(v[gaze::Feature::FixationProbability] > 0.0)) continue;
      ++stats.fixated_words;
      fixation_sum += v[gaze::Feature::MeanFixationDuration];
      gaze_sum += v[gaze::Feature::TotalFixationDuration];
    }
  }
  if (stats.fixated_words > 0) {
    stats.mean_fixation_duration = fixation_sum / static_cast<double>(stats.fixated_words);
    stats.mean_gaze_duration = gaze_sum / static_cast<double>(stats.fixated_words);
  }
  return stats;
}

}  // namespace gazener::corpus
