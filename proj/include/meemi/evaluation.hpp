#pragma once

#include "meemi/alignment.hpp"
#include "meemi/lexicon.hpp"
#include "meemi/retrieval.hpp"
#include "meemi/solvers.hpp"

#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace meemi {

enum class Task { bli, similarity, hypernym };

std::string_view to_string(Task task);

struct EvalReport {
  Task task = Task::bli;
  std::string dataset;
  RetrievalMode retrieval = RetrievalMode::cosine;
  std::vector<std::pair<std::string, double>> metrics;
  std::size_t resolved = 0;
  std::size_t total = 0;

  /// Throws if the report has no metric of that name.
  double metric(std::string_view name) const;
};

/// Aligned plain-text table.
std::string format_text(const EvalReport& report);
/// One `key<TAB>value` line per field, metrics last.
std::string format_tsv(const EvalReport& report);

struct RetrievalSettings {
  RetrievalMode mode = RetrievalMode::cosine;
  std::size_t csls_k = RetrievalIndex::kDefaultCslsK;
};

/// Bilingual lexicon induction. Each distinct source token is one query whose
/// gold set is every listed target that exists in the target space; a query
/// scores a hit at k if any gold member is among the top k. Metrics "P@k".
EvalReport eval_bli(const AlignedPair& aligned, const BilingualLexicon& test, const RetrievalSettings& retrieval,
                    std::span<const std::size_t> ks, std::string dataset = "bli");

double pearson(std::span<const double> x, std::span<const double> y);
/// Pearson correlation of average ranks (ties share the mean rank).
double spearman(std::span<const double> x, std::span<const double> y);
std::vector<double> average_ranks(std::span<const double> values);

/// Cosine of lookup_a(w1) and lookup_b(w2) against gold; metrics "pearson"
/// and "spearman". Pass the same space twice for monolingual similarity.
EvalReport eval_similarity(const EmbeddingSpace& space_a, const EmbeddingSpace& space_b,
                           const SimilarityDataset& dataset, std::string name = "similarity");

/// One row per resolvable (query, gold hypernym) combination, dataset order.
PairedData hypernym_training_rows(const EmbeddingSpace& space, const HypernymDataset& train);

LinearMap fit_hypernym_projection(const EmbeddingSpace& space, const HypernymDataset& train);

struct HypernymTrainingSource {
  const EmbeddingSpace* space;
  const HypernymDataset* data;
};

/// Stacks the training rows of several (space, dataset) sources before
/// fitting, e.g. source-language data plus a few target-language pairs.
LinearMap fit_hypernym_projection(std::span<const HypernymTrainingSource> sources);

struct RankingScores {
  double reciprocal_rank = 0.0;
  double average_precision = 0.0;
  double precision_at_5 = 0.0;
};

/// Scores one ranked candidate list against a gold set. AP is normalised by
/// min(|gold|, k) and P@5 by min(|gold|, 5).
RankingScores score_ranking(std::span<const std::string> ranked, const std::set<std::string>& gold,
                            std::size_t k);

struct HypernymSettings {
  std::size_t k = 15;
  RetrievalSettings retrieval;
};

/// Projects each test query from `query_space` and ranks `candidate_space`,
/// excluding the query token itself. Metrics "MRR", "MAP", "P@5".
EvalReport eval_hypernyms(const EmbeddingSpace& query_space, const EmbeddingSpace& candidate_space,
                          const LinearMap& projection, const HypernymDataset& test,
                          const HypernymSettings& settings = {}, std::string name = "hypernym");

}  // namespace meemi
