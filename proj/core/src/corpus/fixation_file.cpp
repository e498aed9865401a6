#include "gazener/corpus/fixation_file.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <unordered_map>

#include "gazener/error.hpp"
#include "gazener/text_util.hpp"

namespace gazener::corpus {

void FixationData::add_sequence(const std::string& reader, int sent_id,
                                std::vector<FixationEvent> events) {
  const auto pos = std::lower_bound(readers_.begin(), readers_.end(), reader);
  if (pos == readers_.end() || *pos != reader) readers_.insert(pos, reader);
  std::sort(events.begin(), events.end(),
            [](const FixationEvent& a, const FixationEvent& b) { return a.order < b.order; });
  sequences_[{reader, sent_id}] = std::move(events);
}

std::span<const FixationEvent> FixationData::sequence(const std::string& reader,
                                                      int sent_id) const {
  const auto it = sequences_.find({reader, sent_id});
  if (it == sequences_.end()) return {};
  return it->second;
}

FixationData parse_fixation_stream(std::istream& in, std::span<const Sentence> sentences,
                                   const std::string& source_name) {
  std::unordered_map<int, int> group_counts;
  for (const auto& s : sentences) group_counts[s.sent_id] = s.group_count();

  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw ParseError(source_name, 1, "missing header");
  ++line_no;
  strip_cr(line);
  if (trim(line) != kFixationHeader) {
    throw ParseError(source_name, line_no,
                     std::string("expected header '") + kFixationHeader + "'");
  }

  std::map<FixationData::Key, std::vector<FixationEvent>> grouped;
  std::map<FixationData::Key, std::size_t> first_line;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (trim(line).empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != 5) {
      throw ParseError(source_name, line_no,
                       "expected 5 comma-separated columns, found " + std::to_string(fields.size()));
    }
    FixationEvent event;
    event.reader_id = std::string(trim(fields[0]));
    const auto sent = parse_int(trim(fields[1]));
    const auto word = parse_int(trim(fields[2]));
    const auto order = parse_int(trim(fields[3]));
    const auto duration = parse_double(trim(fields[4]));
    if (event.reader_id.empty()) throw ParseError(source_name, line_no, "empty reader_id");
    if (!sent || !word || !order || !duration || std::isnan(*duration)) {
      throw ParseError(source_name, line_no, "unparsable numeric field");
    }
    event.sent_id = static_cast<int>(*sent);
    event.word_index = static_cast<int>(*word);
    event.order = static_cast<int>(*order);
    event.duration_ms = *duration;
    if (!(event.duration_ms > 0.0)) {
      throw ParseError(source_name, line_no, "non-positive duration " + fields[4]);
    }
    const auto groups = group_counts.find(event.sent_id);
    if (groups == group_counts.end()) {
      throw ParseError(source_name, line_no, "unknown sent_id " + std::to_string(event.sent_id));
    }
    if (event.word_index < 0 || event.word_index >= groups->second) {
      throw ParseError(source_name, line_no,
                       "word_index " + std::to_string(event.word_index) + " out of range for sentence " +
                           std::to_string(event.sent_id));
    }
    if (event.order < 0) throw ParseError(source_name, line_no, "negative order");
    FixationData::Key key{event.reader_id, event.sent_id};
    first_line.try_emplace(key, line_no);
    auto& bucket = grouped[key];
    for (const auto& existing : bucket) {
      if (existing.order == event.order) {
        throw ParseError(source_name, line_no,
                         "duplicate order " + std::to_string(event.order) + " for reader '" +
                             event.reader_id + "' in sentence " + std::to_string(event.sent_id));
      }
    }
    bucket.push_back(std::move(event));
  }

  FixationData data;
  for (auto& [key, events] : grouped) {
    // Distinct non-negative orders all below k form a permutation of 0..k-1.
    for (const auto& e : events) {
      if (static_cast<std::size_t>(e.order) >= events.size()) {
        throw ParseError(source_name, first_line[key],
                         "orders for reader '" + key.first + "' in sentence " +
                             std::to_string(key.second) + " are not a permutation of 0..k-1");
      }
    }
    data.add_sequence(key.first, key.second, std::move(events));
  }
  return data;
}

FixationData parse_fixation_file(const std::filesystem::path& path,
                                 std::span<const Sentence> sentences) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string(), 0, "cannot open fixation file");
  return parse_fixation_stream(in, sentences, path.string());
}

void write_fixation_stream(std::ostream& out, std::span<const FixationEvent> events) {
  out << kFixationHeader << '\n';
  for (const auto& e : events) {
    out << e.reader_id << ',' << e.sent_id << ',' << e.word_index << ',' << e.order << ','
        << format_double(e.duration_ms) << '\n';
  }
}

}  // namespace gazener::corpus
