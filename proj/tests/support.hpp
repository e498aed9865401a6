#pragma once

#include <string>
#include <vector>

#include "gazener/corpus/token.hpp"
#include "gazener/nn/model.hpp"

namespace gazener::fixtures {

// Every dimension at most 4, so finite differences over all weights are cheap.
inline nn::ModelConfig tiny_config(bool use_gaze) {
  nn::ModelConfig c;
  c.char_embed_dim = 3;
  c.word_embed_dim = 4;
  c.gaze_bins = 3;
  c.gaze_embed_dim = 2;
  c.char_lstm_hidden = 2;
  c.word_lstm_hidden = 3;
  c.use_gaze = use_gaze;
  c.seed = 11;
  return c;
}

inline corpus::Sentence sentence_of(const std::vector<std::pair<std::string, corpus::Tag>>& words, int sent_id = 0) {
  corpus::Sentence s;
  s.corpus_id = "t";
  s.sent_id = sent_id;
  int group = 0;
  for (const auto& [w, tag] : words) s.tokens.push_back(corpus::make_token(w, tag, group++));
  return s;
}

}  // namespace gazener::fixtures
