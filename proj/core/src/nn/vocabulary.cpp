#include "gazener/nn/vocabulary.hpp"

#include <stdexcept>

namespace gazener::nn {

Vocabulary::Vocabulary() { add(kUnknownToken); }

int Vocabulary::add(const std::string& item) {
  const auto [it, inserted] = index_.try_emplace(item, static_cast<int>(items_.size()));
  if (inserted) items_.push_back(item);
  return it->second;
}

int Vocabulary::find(const std::string& item) const {
  const auto it = index_.find(item);
  return it == index_.end() ? kUnknown : it->second;
}

Vocabulary Vocabulary::from_items(std::vector<std::string> items) {
  if (items.empty() || items.front() != kUnknownToken) {
    throw std::invalid_argument("vocabulary must start with the unknown token");
  }
  Vocabulary vocab;
  for (std::size_t i = 1; i < items.size(); ++i) {
    if (vocab.add(items[i]) != static_cast<int>(i)) throw std::invalid_argument("duplicate vocabulary item " + items[i]);
  }
  return vocab;
}

Vocabulary build_word_vocabulary(std::span<const corpus::Sentence> training,
                                 const corpus::EmbeddingTable* pretrained) {
  Vocabulary vocab;
  for (const auto& sentence : training) {
    for (const auto& token : sentence.tokens) vocab.add(token.normalized);
  }
  if (pretrained != nullptr) {
    for (const auto& word : pretrained->words()) vocab.add(word);
  }
  return vocab;
}

Vocabulary build_char_vocabulary(std::span<const corpus::Sentence> training) {
  Vocabulary vocab;
  for (const auto& sentence : training) {
    for (const auto& token : sentence.tokens) {
      for (const auto& c : corpus::utf8_characters(token.surface)) vocab.add(c);
    }
  }
  return vocab;
}

int lookup_word(const Vocabulary& words, const corpus::Token& token) {
  const int exact = words.find(token.normalized);
  if (exact != Vocabulary::kUnknown) return exact;
  return words.find(corpus::to_lower(token.normalized));
}

}  // namespace gazener::nn
