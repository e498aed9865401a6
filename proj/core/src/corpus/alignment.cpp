#include "gazener/corpus/alignment.hpp"

#include "gazener/error.hpp"

namespace gazener::corpus {

std::vector<gaze::RawGazeVector> align_split_tokens(
    const Sentence& sentence, const std::map<int, gaze::RawGazeVector>& group_features) {
  std::vector<gaze::RawGazeVector> aligned;
  aligned.reserve(sentence.tokens.size());
  for (const auto& token : sentence.tokens) {
    const auto it = group_features.find(token.whitespace_group);
    if (it == group_features.end()) {
      throw ValidationError("sentence " + std::to_string(sentence.sent_id) +
                            ": no gaze features for whitespace group " +
                            std::to_string(token.whitespace_group));
    }
    aligned.push_back(it->second);
  }
  return aligned;
}

}  // namespace gazener::corpus
