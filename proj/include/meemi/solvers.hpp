#pragma once

#include "meemi/embeddings.hpp"

#include <filesystem>

namespace meemi {

/// A d_in x d_out matrix applied to row vectors (v -> v * M).
///
/// When `orthogonal()` is set the matrix is square and M^T M = I to 1e-8;
/// the constructor enforces this.
class LinearMap {
 public:
  static constexpr double kOrthogonalityTolerance = 1e-8;

  LinearMap(Matrix matrix, bool orthogonal);

  static LinearMap identity(std::size_t dim);

  const Matrix& matrix() const noexcept { return matrix_; }
  bool orthogonal() const noexcept { return orthogonal_; }
  std::size_t input_dim() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }
  std::size_t output_dim() const noexcept { return static_cast<std::size_t>(matrix_.cols()); }

 private:
  Matrix matrix_;
  bool orthogonal_;
};

/// n paired rows: inputs (n x d_in) and targets (n x d_out).
struct PairedData {
  Matrix inputs;
  Matrix targets;

  PairedData(Matrix inputs, Matrix targets);
  std::size_t rows() const noexcept { return static_cast<std::size_t>(inputs.rows()); }
};

/// Orthogonal W minimising ||A W - B||_F: W = U V^T from the SVD of A^T B.
LinearMap fit_procrustes(const PairedData& data);

/// Unconstrained X minimising ||A X - B||_F. Rank-deficient problems get the
/// minimum-Frobenius-norm minimiser (complete orthogonal decomposition).
LinearMap fit_least_squares(const PairedData& data);

EmbeddingSpace apply_map(const LinearMap& map, const EmbeddingSpace& space);

// Text format: "<d_in> <d_out> <0|1>" then d_in rows of d_out values.
void save_map(const LinearMap& map, const std::filesystem::path& path);
LinearMap load_map(const std::filesystem::path& path);

}  // namespace meemi
