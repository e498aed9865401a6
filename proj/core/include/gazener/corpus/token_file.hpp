#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "gazener/corpus/token.hpp"

namespace gazener::corpus {

struct TokenFile {
  std::vector<Sentence> sentences;
  std::size_t repaired_labels = 0;  // stray I-X rewritten as B-X
};

// Tab-separated: surface, whitespace group, label. Blank line between
// sentences, '#' starts a comment line. Sentence ids are assigned in file order.
TokenFile parse_token_file(const std::filesystem::path& path, std::string corpus_id = {});
TokenFile parse_token_stream(std::istream& in, const std::string& corpus_id,
                             const std::string& source_name = "<stream>");

// Canonical form: one token per line, a blank line after every sentence.
void write_token_stream(std::ostream& out, std::span<const Sentence> sentences);
void write_token_file(const std::filesystem::path& path, std::span<const Sentence> sentences);

// Splits a line on '\t' (no trimming).
std::vector<std::string> split_tabs(const std::string& line);

}  // namespace gazener::corpus
