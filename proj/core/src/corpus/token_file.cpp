#include "gazener/corpus/token_file.hpp"

#include <fstream>
#include <ostream>

#include "gazener/error.hpp"
#include "gazener/text_util.hpp"

namespace gazener::corpus {

namespace {

void finish_sentence(TokenFile& file, Sentence& current, const std::string& corpus_id) {
  if (current.tokens.empty()) return;
  std::vector<Tag> labels = current.labels();
  file.repaired_labels += repair_iob(labels);
  for (std::size_t i = 0; i < labels.size(); ++i) current.tokens[i].label = labels[i];
  current.corpus_id = corpus_id;
  current.sent_id = static_cast<int>(file.sentences.size());
  file.sentences.push_back(std::move(current));
  current = Sentence{};
}

}  // namespace

std::vector<std::string> split_tabs(const std::string& line) { return split(line, '\t'); }

TokenFile parse_token_stream(std::istream& in, const std::string& corpus_id,
                             const std::string& source_name) {
  TokenFile file;
  Sentence current;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (!line.empty() && line.front() == '#') continue;
    if (trim(line).empty()) {
      finish_sentence(file, current, corpus_id);
      continue;
    }
    const auto fields = split_tabs(line);
    if (fields.size() != 3) {
      throw ParseError(source_name, line_no,
                       "expected 3 tab-separated columns, found " + std::to_string(fields.size()));
    }
    if (fields[0].empty()) throw ParseError(source_name, line_no, "empty token surface");
    const auto group = parse_int(fields[1]);
    if (!group || *group < 0) {
      throw ParseError(source_name, line_no, "invalid whitespace group '" + fields[1] + "'");
    }
    const int expected_min = current.tokens.empty() ? 0 : current.tokens.back().whitespace_group;
    if (*group != expected_min && *group != expected_min + (current.tokens.empty() ? 0 : 1)) {
      throw ParseError(source_name, line_no,
                       "whitespace group " + fields[1] + " does not continue the sentence's numbering");
    }
    const auto tag = parse_tag(fields[2]);
    if (!tag) throw ParseError(source_name, line_no, "unknown label '" + fields[2] + "'");
    current.tokens.push_back(make_token(fields[0], *tag, static_cast<int>(*group)));
  }
  if (in.bad()) throw ParseError(source_name, line_no, "read failure");
  finish_sentence(file, current, corpus_id);
  return file;
}

TokenFile parse_token_file(const std::filesystem::path& path, std::string corpus_id) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string(), 0, "cannot open token file");
  if (corpus_id.empty()) corpus_id = path.stem().string();
  return parse_token_stream(in, corpus_id, path.string());
}

void write_token_stream(std::ostream& out, std::span<const Sentence> sentences) {
  for (const auto& sentence : sentences) {
    for (const auto& token : sentence.tokens) {
      out << token.surface << '\t' << token.whitespace_group << '\t' << tag_name(token.label)
          << '\n';
    }
    out << '\n';
  }
}

void write_token_file(const std::filesystem::path& path, std::span<const Sentence> sentences) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  write_token_stream(out, sentences);
}

}  // namespace gazener::corpus
