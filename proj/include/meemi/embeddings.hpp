#pragma once

#include "meemi/common.hpp"

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace meemi {

/// Vocabulary plus one row vector per token for a single language.
///
/// Immutable after construction. Row i of `matrix()` is the vector of
/// `vocab()[i]`; tokens are unique and whitespace-free, and every component
/// is finite.
class EmbeddingSpace {
 public:
  EmbeddingSpace(std::vector<std::string> vocab, Matrix matrix);

  const std::vector<std::string>& vocab() const noexcept { return vocab_; }
  const Matrix& matrix() const noexcept { return matrix_; }
  const std::string& token(std::size_t i) const { return vocab_.at(i); }
  std::size_t size() const noexcept { return vocab_.size(); }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(matrix_.cols()); }
  bool empty() const noexcept { return vocab_.empty(); }

  /// Exact match first, then one retry with the ASCII-lowercased token.
  std::optional<std::size_t> find(std::string_view token) const;

  /// Row of `token` under the same matching rule as `find`.
  std::optional<RowVector> lookup(std::string_view token) const;

 private:
  std::vector<std::string> vocab_;
  Matrix matrix_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct LoadStats {
  bool had_header = false;
  std::size_t duplicates_skipped = 0;
  std::size_t rows_read = 0;
};

/// Reads the word2vec text format. A first line of exactly two integers is
/// taken as a `<count> <dim>` header. Duplicate tokens keep their first
/// occurrence. `limit` caps the number of tokens kept, in file order.
EmbeddingSpace load_space(const std::filesystem::path& path,
                          std::optional<std::size_t> limit = std::nullopt,
                          LoadStats* stats = nullptr);

/// Writes a header line and one row per token. Refuses empty spaces.
void save_space(const EmbeddingSpace& space, const std::filesystem::path& path);

EmbeddingSpace normalize_unit(const EmbeddingSpace& space);
EmbeddingSpace mean_center(const EmbeddingSpace& space);

}  // namespace meemi
