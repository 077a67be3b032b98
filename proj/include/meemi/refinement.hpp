#pragma once

#include "meemi/alignment.hpp"
#include "meemi/lexicon.hpp"
#include "meemi/solvers.hpp"

#include <filesystem>

namespace meemi {

/// The two least-squares maps that pull each language toward the
/// cross-lingual average of dictionary pairs.
struct MeemiModel {
  LinearMap map_source;  // v_w  -> mu
  LinearMap map_target;  // v_w' -> mu
  std::size_t train_pair_count = 0;
};

/// Regression problems for both directions: rows (v_w -> mu) and
/// (v_w' -> mu) with mu = (v_w + v_w') / 2, in lexicon order.
struct AverageProblems {
  PairedData source;
  PairedData target;
  std::size_t resolved = 0;
  std::size_t skipped = 0;
};

AverageProblems compute_averages(const AlignedPair& aligned, const BilingualLexicon& lexicon);

MeemiModel fit_meemi(const AlignedPair& aligned, const BilingualLexicon& lexicon);

/// Applies the source map to every source row and the target map to every
/// target row. No renormalization.
AlignedPair apply_meemi(const MeemiModel& model, const AlignedPair& aligned);

struct SimilarityShift {
  double mean_delta = 0.0;
  double std_delta = 0.0;  // population standard deviation
  double fraction_positive = 0.0;
  std::size_t pairs = 0;
};

/// Per resolved pair, delta = cos(after) - cos(before).
SimilarityShift similarity_shift_report(const AlignedPair& before, const AlignedPair& after,
                                        const BilingualLexicon& lexicon);

/// Manifest lines: source map path, target map path, train pair count.
/// Relative map paths are resolved against the manifest's directory.
void save_model(const MeemiModel& model, const std::filesystem::path& manifest,
                const std::filesystem::path& source_map, const std::filesystem::path& target_map);
MeemiModel load_model(const std::filesystem::path& manifest);

}  // namespace meemi
