#include "gazener/gaze/measures.hpp"

#include <map>
#include <stdexcept>
#include <string>

namespace gazener::gaze {

ReaderWordMeasures reader_word_measures(std::span<const Fixation> path, int word_index,
                                        int word_count) {
  if (word_index < 0 || word_index >= word_count) {
    throw std::out_of_range("word index " + std::to_string(word_index) + " outside sentence of " +
                            std::to_string(word_count) + " words");
  }
  ReaderWordMeasures m;
  const std::size_t n = path.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (path[i].word != word_index) continue;
    if (!m.fixated) {
      m.fixated = true;
      m.first_fixation_duration = path[i].duration_ms;
      for (std::size_t j = i; j < n && path[j].word == word_index; ++j) {
        m.first_pass_duration += path[j].duration_ms;
      }
    }
    ++m.n_fixations;
    m.total_duration += path[i].duration_ms;
    // A regression launched from this fixation: everything left of the word
    // until the reader is back at or beyond it.
    if (i + 1 < n && path[i + 1].word < word_index) {
      for (std::size_t j = i + 1; j < n && path[j].word < word_index; ++j) {
        m.regression_from_duration += path[j].duration_ms;
      }
    }
  }
  m.n_refixations = m.n_fixations > 0 ? m.n_fixations - 1 : 0;
  m.reread = m.n_fixations >= 2;
  return m;
}

std::vector<Fixation> scan_path(std::span<const corpus::FixationEvent> events) {
  std::vector<Fixation> path;
  path.reserve(events.size());
  for (const auto& e : events) path.push_back({e.word_index, e.duration_ms});
  return path;
}

RawGazeVector average_readers(std::span<const ReaderWordMeasures> records, int reader_count) {
  if (reader_count <= 0) throw std::invalid_argument("average_readers: reader_count must be >= 1");
  if (records.size() > static_cast<std::size_t>(reader_count)) {
    throw std::invalid_argument("average_readers: more records than readers");
  }
  RawGazeVector v;
  int fixating = 0;
  int rereading = 0;
  for (const auto& r : records) {
    if (!r.fixated) continue;
    ++fixating;
    if (r.reread) ++rereading;
    v[Feature::NFixations] += r.n_fixations;
    v[Feature::MeanFixationDuration] += r.total_duration / r.n_fixations;
    v[Feature::FirstFixationDuration] += r.first_fixation_duration;
    v[Feature::FirstPassDuration] += r.first_pass_duration;
    v[Feature::TotalFixationDuration] += r.total_duration;
    v[Feature::NRefixations] += r.n_refixations;
    v[Feature::TotalRegressionFromDuration] += r.regression_from_duration;
  }
  if (fixating > 0) {
    constexpr Feature averaged[] = {
        Feature::NFixations,           Feature::MeanFixationDuration, Feature::FirstFixationDuration,
        Feature::FirstPassDuration,    Feature::TotalFixationDuration, Feature::NRefixations,
        Feature::TotalRegressionFromDuration,
    };
    for (const Feature f : averaged) v[f] /= fixating;
  }
  v[Feature::FixationProbability] = static_cast<double>(fixating) / reader_count;
  v[Feature::RereadProbability] = static_cast<double>(rereading) / reader_count;
  return v;
}

double context_duration(const RawGazeVector& neighbour) noexcept {
  return neighbour[Feature::MeanFixationDuration];
}

std::vector<RawGazeVector> add_context_features(std::span<const RawGazeVector> words) {
  struct Slot {
    int offset;
    Feature probability;
    Feature duration;
  };
  constexpr Slot slots[] = {
      {-2, Feature::PrevPrevFixationProbability, Feature::PrevPrevFixationDuration},
      {-1, Feature::PrevFixationProbability, Feature::PrevFixationDuration},
      {+1, Feature::NextFixationProbability, Feature::NextFixationDuration},
      {+2, Feature::NextNextFixationProbability, Feature::NextNextFixationDuration},
  };
  std::vector<RawGazeVector> out(words.begin(), words.end());
  const int n = static_cast<int>(words.size());
  for (int i = 0; i < n; ++i) {
    for (const auto& slot : slots) {
      const int j = i + slot.offset;
      if (j < 0 || j >= n) {
        out[i][slot.probability] = kUnknown;
        out[i][slot.duration] = kUnknown;
      } else {
        out[i][slot.probability] = words[j][Feature::FixationProbability];
        out[i][slot.duration] = context_duration(words[j]);
      }
    }
  }
  return out;
}

std::vector<RawGazeVector> sentence_group_features(const corpus::Sentence& sentence,
                                                   const corpus::FixationData& fixations) {
  const int words = sentence.group_count();
  const int readers = static_cast<int>(fixations.reader_count());
  std::vector<std::vector<Fixation>> paths;
  paths.reserve(fixations.readers().size());
  for (const auto& reader : fixations.readers()) {
    paths.push_back(scan_path(fixations.sequence(reader, sentence.sent_id)));
  }
  std::vector<RawGazeVector> local(static_cast<std::size_t>(words));
  std::vector<ReaderWordMeasures> records(paths.size());
  for (int w = 0; w < words; ++w) {
    for (std::size_t r = 0; r < paths.size(); ++r) {
      records[r] = reader_word_measures(paths[r], w, words);
    }
    local[static_cast<std::size_t>(w)] =
        readers > 0 ? average_readers(records, readers) : RawGazeVector{};
  }
  return add_context_features(local);
}

}  // namespace gazener::gaze
