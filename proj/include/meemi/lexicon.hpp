#pragma once

#include "meemi/embeddings.hpp"

#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace meemi {

struct TranslationPair {
  std::string source;
  std::string target;

  friend bool operator==(const TranslationPair&, const TranslationPair&) = default;
};

/// Ordered (source, target) translation pairs. Exact duplicates are dropped
/// on insertion; a source may repeat with different targets.
class BilingualLexicon {
 public:
  BilingualLexicon() = default;
  explicit BilingualLexicon(std::vector<TranslationPair> pairs);

  /// Returns false if the pair was already present.
  bool add(TranslationPair pair);

  const std::vector<TranslationPair>& pairs() const noexcept { return pairs_; }
  std::size_t size() const noexcept { return pairs_.size(); }
  bool empty() const noexcept { return pairs_.empty(); }

 private:
  std::vector<TranslationPair> pairs_;
  std::set<std::pair<std::string, std::string>> seen_;
};

struct IndexPair {
  std::size_t source;
  std::size_t target;
};

/// Pairs of a lexicon whose tokens both resolve, with their row indices.
struct ResolvedLexicon {
  BilingualLexicon lexicon;
  std::vector<IndexPair> rows;
  std::size_t total = 0;
  double coverage = 0.0;
};

struct SimilarityTriple {
  std::string first;
  std::string second;
  double gold;
};

struct SimilarityDataset {
  std::vector<SimilarityTriple> triples;
};

struct HypernymEntry {
  std::string query;
  std::vector<std::string> hypernyms;
};

struct HypernymDataset {
  std::vector<HypernymEntry> entries;
};

struct LexiconSplit {
  BilingualLexicon train;
  BilingualLexicon test;
};

BilingualLexicon load_lexicon(const std::filesystem::path& path);
void save_lexicon(const BilingualLexicon& lexicon, const std::filesystem::path& path);

/// Keeps the pairs whose tokens both resolve via `EmbeddingSpace::find`.
/// Throws if nothing resolves.
ResolvedLexicon resolve(const BilingualLexicon& lexicon, const EmbeddingSpace& source,
                        const EmbeddingSpace& target);

SimilarityDataset load_similarity(const std::filesystem::path& path);

/// Tab-separated `query hyp1 hyp2 ...`; repeated queries are merged.
HypernymDataset load_hypernyms(const std::filesystem::path& path);
void save_hypernyms(const HypernymDataset& dataset, const std::filesystem::path& path);

/// Seeded split that keeps every pair of a given source on the same side.
/// The train side receives whole source groups until it holds at least
/// `n_train` pairs; both sides keep input order.
LexiconSplit split_lexicon(const BilingualLexicon& lexicon, std::size_t n_train, std::uint64_t seed);

}  // namespace meemi
