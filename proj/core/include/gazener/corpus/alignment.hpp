#pragma once

#include <map>
#include <vector>

#include "gazener/corpus/token.hpp"
#include "gazener/gaze/raw_gaze_vector.hpp"

namespace gazener::corpus {

// Gives every token the measures of the whitespace unit it was split from.
// Throws ValidationError if a token's group is missing from `group_features`.
std::vector<gaze::RawGazeVector> align_split_tokens(
    const Sentence& sentence, const std::map<int, gaze::RawGazeVector>& group_features);

}  // namespace gazener::corpus
