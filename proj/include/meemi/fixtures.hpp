#pragma once

#include "meemi/embeddings.hpp"
#include "meemi/lexicon.hpp"
#include "meemi/solvers.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace meemi {

struct SyntheticSpec {
  std::size_t vocab_size = 1000;
  std::size_t dim = 50;
  double noise_sigma = 0.0;
  std::uint64_t seed = 42;
  // Source and target share token strings ("w17" on both sides) instead of
  // "s17" / "t17".
  bool shared_vocab = false;

  void validate() const;
};

/// Source rows ~ N(0, I); target = source * rotation + N(0, sigma^2 I).
/// Gold pairs token i <-> token i, in index order.
struct RotatedPair {
  EmbeddingSpace source;
  EmbeddingSpace target;
  BilingualLexicon gold;
  LinearMap rotation;
};

RotatedPair make_rotated_pair(const SyntheticSpec& spec);

/// A small target space with one engineered hub.
///
/// Built from a random orthonormal basis {c, u_1..u_20, w_1..w_20, ...}:
/// query i is 0.8 c + 0.6 u_i, its specific target is 0.2 c + 0.7 u_i +
/// 0.686 w_i, and the hub is c itself, so every query is closer to the hub
/// (cosine 0.8) than to its own target (0.58). Eight random distractors
/// complete the vocabulary. A small seeded jitter breaks exact symmetries.
struct HubSet {
  EmbeddingSpace targets;
  EmbeddingSpace queries;
  std::size_t hub;
  std::vector<std::size_t> specific;  // intended target row per query
};

HubSet make_hub_set(std::uint64_t seed);

/// Hyponym words "hypo<i>" with Gaussian vectors and hypernym words
/// "hyper<i>" = hypo<i> * true_map + N(0, sigma^2 I). The first 60% of the
/// hyponyms are training queries, the rest test queries. true_map is a random
/// rotation times a diagonal scaling in [0.5, 1.5].
struct Taxonomy {
  EmbeddingSpace space;
  HypernymDataset train;
  HypernymDataset test;
  LinearMap true_map;
};

Taxonomy make_taxonomy(const SyntheticSpec& spec);

/// Haar-distributed orthogonal matrix (QR of a Gaussian matrix, sign-fixed).
Matrix random_orthogonal(std::size_t dim, std::mt19937_64& rng);

Matrix gaussian_matrix(std::size_t rows, std::size_t cols, double sigma, std::mt19937_64& rng);

}  // namespace meemi
