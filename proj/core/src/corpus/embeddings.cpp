#include "gazener/corpus/embeddings.hpp"

#include <cmath>
#include <fstream>

#include "gazener/error.hpp"
#include "gazener/text_util.hpp"

namespace gazener::corpus {

bool EmbeddingTable::insert(const std::string& word, std::span<const double> vector) {
  if (vector.size() != dimension_) return false;
  if (!index_.emplace(word, words_.size()).second) return false;
  words_.push_back(word);
  data_.insert(data_.end(), vector.begin(), vector.end());
  return true;
}

std::optional<std::span<const double>> EmbeddingTable::find(const std::string& word) const {
  const auto it = index_.find(word);
  if (it == index_.end()) return std::nullopt;
  return std::span<const double>(data_.data() + it->second * dimension_, dimension_);
}

LoadedEmbeddings load_embeddings_stream(std::istream& in, std::size_t dimension,
                                        const std::string& source_name) {
  if (dimension == 0) throw ValidationError("embedding dimension must be positive");
  LoadedEmbeddings loaded{EmbeddingTable(dimension), 0};
  std::string line;
  std::vector<double> values;
  values.reserve(dimension);
  while (std::getline(in, line)) {
    strip_cr(line);
    const auto fields = split_whitespace(line);
    if (fields.empty()) continue;
    if (fields.size() != dimension + 1) {
      ++loaded.skipped_rows;
      continue;
    }
    values.clear();
    bool ok = true;
    for (std::size_t i = 1; i < fields.size() && ok; ++i) {
      const auto v = parse_double(fields[i]);
      ok = v && !std::isnan(*v);
      if (ok) values.push_back(*v);
    }
    if (!ok || !loaded.table.insert(std::string(fields[0]), values)) ++loaded.skipped_rows;
  }
  if (loaded.table.size() == 0) {
    throw ParseError(source_name, 0, "no valid embedding rows of dimension " + std::to_string(dimension));
  }
  return loaded;
}

LoadedEmbeddings load_embeddings(const std::filesystem::path& path, std::size_t dimension) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string(), 0, "cannot open embedding file");
  return load_embeddings_stream(in, dimension, path.string());
}

}  // namespace gazener::corpus
