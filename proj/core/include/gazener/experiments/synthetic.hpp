#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "gazener/corpus/fixation_file.hpp"
#include "gazener/corpus/token.hpp"

namespace gazener::experiments {

struct SyntheticSpec {
  std::uint64_t seed = 7;
  int sentences = 500;
  int readers = 10;
  std::string corpus_id = "synthetic";
  bool with_gaze = true;
  // Entity tokens read this much longer (relative) than other tokens.
  double entity_duration_boost = 0.4;
  // Share of sentences rendered entirely in lower case.
  double lowercase_rate = 0.5;
  // Share of open slots filled by an entity rather than a bare noun.
  double entity_slot_rate = 0.6;
};

struct SyntheticCorpus {
  std::vector<corpus::Sentence> sentences;
  std::vector<corpus::FixationEvent> fixations;  // empty without gaze
};

// Template sentences with PERSON / ORGANIZATION / LOCATION mentions drawn from
// fixed pseudo-word pools, and per-reader scan paths in which entity words
// draw longer fixations and are skipped less often. Same SyntheticSpec, same
// output.
SyntheticCorpus generate_synthetic_corpus(const SyntheticSpec& spec);

void write_synthetic_corpus(const SyntheticCorpus& corpus, const std::filesystem::path& token_file,
                            const std::filesystem::path& fixation_file);

}  // namespace gazener::experiments
