#include "gazener/corpus/averaged_gaze_file.hpp"

#include <fstream>
#include <ostream>
#include <unordered_map>

#include "gazener/error.hpp"
#include "gazener/text_util.hpp"

namespace gazener::corpus {

std::string averaged_gaze_header() {
  std::string header = "sent_id,word_index";
  for (const auto name : gaze::kFeatureNames) {
    header += ',';
    header += name;
  }
  return header;
}

AveragedGaze parse_averaged_gaze_stream(std::istream& in, std::span<const Sentence> sentences,
                                        const std::string& source_name) {
  std::unordered_map<int, int> group_counts;
  for (const auto& s : sentences) group_counts[s.sent_id] = s.group_count();

  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw ParseError(source_name, 1, "missing header");
  strip_cr(line);
  if (trim(line) != averaged_gaze_header()) {
    throw ParseError(source_name, 1, "header must be '" + averaged_gaze_header() + "'");
  }
  AveragedGaze gaze;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (trim(line).empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != 2 + gaze::kFeatureCount) {
      throw ParseError(source_name, line_no,
                       "expected " + std::to_string(2 + gaze::kFeatureCount) + " columns, found " +
                           std::to_string(fields.size()));
    }
    const auto sent = parse_int(trim(fields[0]));
    const auto word = parse_int(trim(fields[1]));
    if (!sent || !word) throw ParseError(source_name, line_no, "unparsable sent_id/word_index");
    const auto groups = group_counts.find(static_cast<int>(*sent));
    if (groups == group_counts.end()) {
      throw ParseError(source_name, line_no, "unknown sent_id " + fields[0]);
    }
    if (*word < 0 || *word >= groups->second) {
      throw ParseError(source_name, line_no, "word_index " + fields[1] + " out of range");
    }
    gaze::RawGazeVector v;
    for (std::size_t f = 0; f < gaze::kFeatureCount; ++f) {
      const auto value = parse_double(trim(fields[2 + f]));
      if (!value) {
        throw ParseError(source_name, line_no,
                         "unparsable value for " + std::string(gaze::kFeatureNames[f]));
      }
      v[f] = *value;
    }
    if (!gaze::satisfies_invariants(v)) {
      throw ParseError(source_name, line_no, "measures violate duration/probability invariants");
    }
    auto [it, inserted] = gaze[static_cast<int>(*sent)].emplace(static_cast<int>(*word), v);
    if (!inserted) throw ParseError(source_name, line_no, "duplicate (sent_id, word_index) row");
  }
  return gaze;
}

AveragedGaze parse_averaged_gaze_file(const std::filesystem::path& path,
                                      std::span<const Sentence> sentences) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string(), 0, "cannot open averaged gaze file");
  return parse_averaged_gaze_stream(in, sentences, path.string());
}

void write_averaged_gaze_stream(std::ostream& out, const AveragedGaze& gaze) {
  out << averaged_gaze_header() << '\n';
  for (const auto& [sent, words] : gaze) {
    for (const auto& [word, v] : words) {
      out << sent << ',' << word;
      for (const double value : v.values) out << ',' << format_double(value);
      out << '\n';
    }
  }
}

}  // namespace gazener::corpus
