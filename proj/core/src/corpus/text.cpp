#include "gazener/corpus/token.hpp"

namespace gazener::corpus {

std::vector<Tag> Sentence::labels() const {
  std::vector<Tag> out;
  out.reserve(tokens.size());
  for (const auto& token : tokens) out.push_back(token.label);
  return out;
}

Token make_token(std::string surface, Tag label, int whitespace_group) {
  Token token;
  token.normalized = normalize_digits(surface);
  token.surface = std::move(surface);
  token.label = label;
  token.whitespace_group = whitespace_group;
  return token;
}

std::string normalize_digits(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    if (c >= '0' && c <= '9') c = '0';
  }
  return out;
}

std::string to_lower(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::vector<std::string> utf8_characters(std::string_view text) {
  std::vector<std::string> chars;
  std::size_t i = 0;
  while (i < text.size()) {
    const auto lead = static_cast<unsigned char>(text[i]);
    std::size_t len = 1;
    if (lead >= 0xF0 && lead < 0xF8) len = 4;
    else if (lead >= 0xE0) len = lead < 0xF0 ? 3 : 1;
    else if (lead >= 0xC0) len = 2;
    if (i + len > text.size()) len = 1;
    for (std::size_t k = 1; k < len; ++k) {
      if ((static_cast<unsigned char>(text[i + k]) & 0xC0) != 0x80) {
        len = 1;
        break;
      }
    }
    chars.emplace_back(text.substr(i, len));
    i += len;
  }
  return chars;
}

}  // namespace gazener::corpus
