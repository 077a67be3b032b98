#pragma once

#include "meemi/embeddings.hpp"

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace meemi {

enum class RetrievalMode { cosine, csls };

std::string_view to_string(RetrievalMode mode);
RetrievalMode parse_retrieval_mode(std::string_view text);

struct Neighbor {
  std::size_t index;
  double score;
};

/// Exact brute-force k-NN view of a target space, scored by cosine or CSLS.
///
/// CSLS(x, y) = 2 cos(x, y) - r_T(x) - r_S(y). r_T(x) is the mean cosine of
/// the query to its csls_k nearest target rows and is computed per query.
/// r_S(y) is the cached density of target row y: its mean cosine to the
/// csls_k nearest rows of the registered source space, or, when no source
/// space is given, to its csls_k nearest other target rows.
class RetrievalIndex {
 public:
  static constexpr std::size_t kDefaultCslsK = 10;

  explicit RetrievalIndex(const EmbeddingSpace& targets, std::size_t csls_k = kDefaultCslsK);
  RetrievalIndex(const EmbeddingSpace& targets, const EmbeddingSpace& sources,
                 std::size_t csls_k = kDefaultCslsK);

  /// Index without CSLS densities, for cosine-only retrieval over large
  /// vocabularies; CSLS queries against it throw.
  static RetrievalIndex cosine_only(const EmbeddingSpace& targets);

  /// Unit-normalized copy of the target space.
  const EmbeddingSpace& space() const noexcept { return space_; }
  std::size_t csls_k() const noexcept { return csls_k_; }
  const Eigen::VectorXd& densities() const noexcept { return densities_; }
  bool has_source_densities() const noexcept { return source_densities_; }
  bool supports_csls() const noexcept { return csls_k_ > 0; }

  /// r_T(query): mean cosine of the query to its csls_k nearest target rows.
  double query_density(const RowVector& query) const;

 private:
  struct NoDensities {};
  RetrievalIndex(NoDensities, const EmbeddingSpace& targets);

  EmbeddingSpace space_;
  std::size_t csls_k_;
  Eigen::VectorXd densities_;
  bool source_densities_ = false;
};

RetrievalIndex build_index(const EmbeddingSpace& space, std::size_t csls_k = RetrievalIndex::kDefaultCslsK);

/// Top-k by cosine, descending; ties go to the lower vocabulary index.
std::vector<Neighbor> knn_cosine(const RetrievalIndex& index, const RowVector& query, std::size_t k);

std::vector<Neighbor> knn_csls(const RetrievalIndex& index, const RowVector& query,
                               double query_density, std::size_t k);
std::vector<Neighbor> knn_csls(const RetrievalIndex& index, const RowVector& query, std::size_t k);

std::vector<Neighbor> knn(const RetrievalIndex& index, const RowVector& query, std::size_t k,
                          RetrievalMode mode);

/// One result list per query row, in query order, computed in parallel.
std::vector<std::vector<Neighbor>> knn_batch(const RetrievalIndex& index, const Matrix& queries,
                                             std::size_t k, RetrievalMode mode);

/// Selects the k best entries of `scores` (descending, lower index on ties).
std::vector<Neighbor> top_k(std::span<const double> scores, std::size_t k);

/// Mean of the k largest cosines between each row of `rows` and the rows of
/// `against` (both already unit-normalized). With `exclude_self`, entry (i, i)
/// is skipped; `rows` and `against` must then be the same matrix.
Eigen::VectorXd mean_top_k_similarity(const Matrix& rows, const Matrix& against, std::size_t k,
                                      bool exclude_self);

}  // namespace meemi
