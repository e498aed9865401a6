#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace gazener::corpus {

// Pre-trained word vectors, kept in file order.
class EmbeddingTable {
 public:
  explicit EmbeddingTable(std::size_t dimension) : dimension_(dimension) {}

  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t size() const noexcept { return words_.size(); }
  const std::vector<std::string>& words() const noexcept { return words_; }

  // Later duplicates of a word are ignored.
  bool insert(const std::string& word, std::span<const double> vector);
  std::optional<std::span<const double>> find(const std::string& word) const;

 private:
  std::size_t dimension_;
  std::vector<std::string> words_;
  std::vector<double> data_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct LoadedEmbeddings {
  EmbeddingTable table;
  std::size_t skipped_rows = 0;
};

// `word v1 ... vD` per line. Rows with the wrong arity or unparsable numbers
// are skipped and counted; a file without any valid row is an error.
LoadedEmbeddings load_embeddings(const std::filesystem::path& path, std::size_t dimension);
LoadedEmbeddings load_embeddings_stream(std::istream& in, std::size_t dimension,
                                        const std::string& source_name = "<stream>");

}  // namespace gazener::corpus
