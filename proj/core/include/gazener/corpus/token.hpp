#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "gazener/corpus/labels.hpp"

namespace gazener::corpus {

struct Token {
  std::string surface;
  std::string normalized;  // surface with every ASCII digit replaced by '0'
  Tag label = Tag::O;
  int whitespace_group = 0;
};

struct Sentence {
  std::string corpus_id;
  int sent_id = 0;
  std::vector<Token> tokens;

  // Number of whitespace-delimited units; groups are numbered 0..group_count()-1.
  int group_count() const noexcept {
    return tokens.empty() ? 0 : tokens.back().whitespace_group + 1;
  }
  std::vector<Tag> labels() const;
};

Token make_token(std::string surface, Tag label, int whitespace_group);

std::string normalize_digits(std::string_view text);

// ASCII lower-casing; bytes outside ASCII pass through unchanged.
std::string to_lower(std::string_view text);

// Splits UTF-8 text into code points (each returned as its byte sequence).
// Invalid lead bytes are returned as single-byte units.
std::vector<std::string> utf8_characters(std::string_view text);

}  // namespace gazener::corpus
