#pragma once

#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "gazener/corpus/embeddings.hpp"
#include "gazener/corpus/token.hpp"

namespace gazener::nn {

// String -> id map with id 0 reserved for the unknown entry.
class Vocabulary {
 public:
  static constexpr int kUnknown = 0;
  static constexpr const char* kUnknownToken = "<UNK>";

  Vocabulary();

  // Returns the id of `item`, inserting it if new.
  int add(const std::string& item);
  // kUnknown if absent.
  int find(const std::string& item) const;
  bool contains(const std::string& item) const { return index_.contains(item); }
  const std::string& item(int id) const { return items_.at(static_cast<std::size_t>(id)); }
  int size() const noexcept { return static_cast<int>(items_.size()); }
  const std::vector<std::string>& items() const noexcept { return items_; }

  // Rebuilds from a stored item list whose first entry is the unknown token.
  static Vocabulary from_items(std::vector<std::string> items);

 private:
  std::vector<std::string> items_;
  std::unordered_map<std::string, int> index_;
};

// Digit-normalized training forms in first-seen order, then the pre-trained
// words not already present.
Vocabulary build_word_vocabulary(std::span<const corpus::Sentence> training,
                                 const corpus::EmbeddingTable* pretrained = nullptr);

// Every code point of the training surfaces.
Vocabulary build_char_vocabulary(std::span<const corpus::Sentence> training);

// Exact digit-normalized form, then its lower-cased form, then unknown.
int lookup_word(const Vocabulary& words, const corpus::Token& token);

}  // namespace gazener::nn
