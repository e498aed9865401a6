#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gazener/corpus/token.hpp"

namespace gazener::corpus {

struct FixationEvent {
  std::string reader_id;
  int sent_id = 0;
  int word_index = 0;  // whitespace group of the fixated word
  int order = 0;       // position in the reader's chronological sequence for the sentence
  double duration_ms = 0.0;
};

// Fixation events grouped per (reader, sentence) and sorted chronologically.
class FixationData {
 public:
  using Key = std::pair<std::string, int>;

  void add_sequence(const std::string& reader, int sent_id, std::vector<FixationEvent> events);

  // Every reader seen anywhere in the file, sorted.
  const std::vector<std::string>& readers() const noexcept { return readers_; }
  std::size_t reader_count() const noexcept { return readers_.size(); }

  // Chronological events of one reader on one sentence (empty if none).
  std::span<const FixationEvent> sequence(const std::string& reader, int sent_id) const;

  const std::map<Key, std::vector<FixationEvent>>& sequences() const noexcept { return sequences_; }

 private:
  std::vector<std::string> readers_;
  std::map<Key, std::vector<FixationEvent>> sequences_;
};

inline constexpr const char* kFixationHeader = "reader_id,sent_id,word_index,order,duration_ms";

// Validates order completeness, duplicate (reader, sentence, order) triples,
// word indices against the sentences' whitespace groups, and positive durations.
FixationData parse_fixation_file(const std::filesystem::path& path,
                                 std::span<const Sentence> sentences);
FixationData parse_fixation_stream(std::istream& in, std::span<const Sentence> sentences,
                                   const std::string& source_name = "<stream>");

void write_fixation_stream(std::ostream& out, std::span<const FixationEvent> events);

}  // namespace gazener::corpus
