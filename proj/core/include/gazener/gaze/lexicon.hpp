#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gazener/corpus/token.hpp"
#include "gazener/gaze/binning.hpp"
#include "gazener/gaze/raw_gaze_vector.hpp"

namespace gazener::gaze {

struct TypedOccurrence {
  std::string surface;
  RawGazeVector values;  // corpus-normalized values of one token
};

struct CorpusOccurrences {
  std::string corpus_id;
  std::vector<TypedOccurrence> tokens;
};

// Lower-cased word type -> occurrence-averaged gaze values, plus the
// thresholds fitted on the averaged values.
struct TypeLexicon {
  int bin_count = kDefaultBinCount;
  std::map<std::string, RawGazeVector> entries;
  std::vector<std::string> source_corpora;
  BinThresholds thresholds;

  // No entries; every lookup misses.
  static TypeLexicon empty(int bin_count = kDefaultBinCount);
};

// Per lower-cased type and feature, the mean over occurrences whose value is
// known (kUnknown when none is). Thresholds are refitted on the entries.
// Throws std::invalid_argument when there is no occurrence at all.
TypeLexicon build_type_lexicon(std::span<const CorpusOccurrences> corpora,
                               int bin_count = kDefaultBinCount);

// Case-insensitive lookup; a miss yields the all-UNKNOWN vector.
BinnedGazeVector lookup_type_features(std::string_view surface, const TypeLexicon& lexicon);
BinnedGazeVector lookup_type_features(const corpus::Token& token, const TypeLexicon& lexicon);

// Fraction of tokens whose lower-cased surface has a lexicon entry.
double lexicon_coverage(std::span<const corpus::Sentence> sentences, const TypeLexicon& lexicon);

void write_lexicon(std::ostream& out, const TypeLexicon& lexicon);
void write_lexicon_file(const std::filesystem::path& path, const TypeLexicon& lexicon);
TypeLexicon read_lexicon(std::istream& in, const std::string& source_name = "<stream>");
TypeLexicon read_lexicon_file(const std::filesystem::path& path);

}  // namespace gazener::gaze
