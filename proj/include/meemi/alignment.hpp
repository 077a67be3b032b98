#pragma once

#include "meemi/embeddings.hpp"
#include "meemi/lexicon.hpp"
#include "meemi/solvers.hpp"

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace meemi {

enum class NormalizationStep { unit, center };

/// Parses a comma-separated list such as "unit,center,unit". "none" or an
/// empty string yields no steps.
std::vector<NormalizationStep> parse_normalization(std::string_view text);
std::string format_normalization(std::span<const NormalizationStep> steps);

EmbeddingSpace apply_normalization(const EmbeddingSpace& space, std::span<const NormalizationStep> steps);

struct AlignmentConfig {
  std::vector<NormalizationStep> normalize{NormalizationStep::unit, NormalizationStep::center,
                                           NormalizationStep::unit};
  bool self_learning = false;
  std::size_t max_iterations = 50;
  // Stop once the mean induced-pair cosine improves by less than this.
  double convergence_tol = 1e-6;
  // Only the first N tokens of each space (file order) take part in induction.
  std::size_t induction_vocab_cap = 20000;

  void validate() const;
};

/// Mapped source, normalized target, and the orthogonal map between them.
struct AlignedPair {
  EmbeddingSpace source;
  EmbeddingSpace target;
  LinearMap map;
  std::size_t iterations_run = 0;
};

/// Throws unless the two spaces share a dimension and the map is orthogonal.
void check_aligned(const AlignedPair& aligned);

/// Stacks the resolved rows of a lexicon as (source row -> target row) pairs.
PairedData gather_pairs(const EmbeddingSpace& source, const EmbeddingSpace& target,
                        std::span<const IndexPair> rows);

AlignedPair align_supervised(const EmbeddingSpace& source, const EmbeddingSpace& target,
                             const BilingualLexicon& lexicon, const AlignmentConfig& config = {});

struct InducedDictionary {
  BilingualLexicon lexicon;
  std::vector<IndexPair> rows;
  std::vector<double> cosines;
  double mean_cosine = 0.0;
};

/// Pairs each of the first `vocab_cap` source tokens with its cosine nearest
/// neighbour among the first `vocab_cap` target tokens.
InducedDictionary induce_nearest(const EmbeddingSpace& mapped_source, const EmbeddingSpace& target,
                                 std::size_t vocab_cap);

BilingualLexicon induce_dictionary(const AlignedPair& aligned, std::size_t vocab_cap);

/// Alternates Procrustes fitting and dictionary induction starting from the
/// seed lexicon. Returns the iteration with the highest mean induced-pair
/// cosine.
AlignedPair iterate_self_learning(const EmbeddingSpace& source, const EmbeddingSpace& target,
                                  const BilingualLexicon& seed, const AlignmentConfig& config = {});

}  // namespace meemi
