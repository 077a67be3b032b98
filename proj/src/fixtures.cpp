#include "meemi/fixtures.hpp"

#include <cmath>
#include <string>

namespace meemi {

void SyntheticSpec::validate() const {
  if (vocab_size == 0 || dim == 0) throw Error("synthetic vocab_size and dim must be positive");
  if (!std::isfinite(noise_sigma) || noise_sigma < 0.0) throw Error("noise_sigma must be finite and >= 0");
}

Matrix gaussian_matrix(std::size_t rows, std::size_t cols, double sigma, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = sigma * normal(rng);
  }
  return m;
}

Matrix random_orthogonal(std::size_t dim, std::mt19937_64& rng) {
  const Eigen::MatrixXd g = gaussian_matrix(dim, dim, 1.0, rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  return q;
}

namespace {

std::vector<std::string> numbered(const std::string& prefix, std::size_t n) {
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

}  // namespace

RotatedPair make_rotated_pair(const SyntheticSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.seed);
  Matrix src = gaussian_matrix(spec.vocab_size, spec.dim, 1.0, rng);
  Matrix rotation = random_orthogonal(spec.dim, rng);
  Matrix tgt = src * rotation;
  if (spec.noise_sigma > 0.0) tgt += gaussian_matrix(spec.vocab_size, spec.dim, spec.noise_sigma, rng);

  auto src_vocab = numbered(spec.shared_vocab ? "w" : "s", spec.vocab_size);
  auto tgt_vocab = numbered(spec.shared_vocab ? "w" : "t", spec.vocab_size);
  BilingualLexicon gold;
  for (std::size_t i = 0; i < spec.vocab_size; ++i) gold.add({src_vocab[i], tgt_vocab[i]});

  return RotatedPair{EmbeddingSpace(std::move(src_vocab), std::move(src)),
                     EmbeddingSpace(std::move(tgt_vocab), std::move(tgt)), std::move(gold),
                     LinearMap(std::move(rotation), true)};
}

HubSet make_hub_set(std::uint64_t seed) {
  constexpr std::size_t kDim = 48;
  constexpr std::size_t kQueries = 20;
  constexpr std::size_t kDistractors = 8;
  constexpr double kJitter = 0.01;

  std::mt19937_64 rng(seed);
  const Matrix basis = random_orthogonal(kDim, rng);
  auto axis = [&](std::size_t j) { return RowVector(basis.col(static_cast<Eigen::Index>(j)).transpose()); };
  const RowVector centre = axis(0);

  Matrix queries(kQueries, kDim);
  Matrix targets(1 + kQueries + kDistractors, kDim);
  targets.row(0) = centre;
  for (std::size_t i = 0; i < kQueries; ++i) {
    const RowVector u = axis(1 + i);
    const RowVector w = axis(1 + kQueries + i);
    queries.row(static_cast<Eigen::Index>(i)) = 0.8 * centre + 0.6 * u;
    targets.row(static_cast<Eigen::Index>(1 + i)) = 0.2 * centre + 0.7 * u + 0.686 * w;
  }
  targets.bottomRows(kDistractors) = gaussian_matrix(kDistractors, kDim, 1.0, rng);

  queries += gaussian_matrix(kQueries, kDim, kJitter, rng);
  targets.topRows(1 + kQueries) += gaussian_matrix(1 + kQueries, kDim, kJitter, rng);
  queries.rowwise().normalize();
  targets.rowwise().normalize();

  std::vector<std::string> target_vocab{"hub"};
  for (std::size_t i = 0; i < kQueries; ++i) target_vocab.push_back("target" + std::to_string(i));
  for (std::size_t i = 0; i < kDistractors; ++i) target_vocab.push_back("distractor" + std::to_string(i));

  std::vector<std::size_t> specific;
  for (std::size_t i = 0; i < kQueries; ++i) specific.push_back(1 + i);

  return HubSet{EmbeddingSpace(std::move(target_vocab), std::move(targets)),
                EmbeddingSpace(numbered("query", kQueries), std::move(queries)), 0, std::move(specific)};
}

Taxonomy make_taxonomy(const SyntheticSpec& spec) {
  spec.validate();
  if (spec.vocab_size < 2 * spec.dim) throw Error("taxonomy needs vocab_size >= 2 * dim");
  const std::size_t n = spec.vocab_size / 2;
  const std::size_t n_train = (n * 3) / 5;
  if (n_train == 0 || n_train == n) throw Error("taxonomy too small to split into train and test");

  std::mt19937_64 rng(spec.seed);
  const Matrix hypo = gaussian_matrix(n, spec.dim, 1.0, rng);
  const Matrix rotation = random_orthogonal(spec.dim, rng);
  std::uniform_real_distribution<double> scale(0.5, 1.5);
  Eigen::VectorXd scales(static_cast<Eigen::Index>(spec.dim));
  for (Eigen::Index j = 0; j < scales.size(); ++j) scales(j) = scale(rng);
  Matrix true_map = rotation * scales.asDiagonal();
  Matrix hyper = hypo * true_map;
  if (spec.noise_sigma > 0.0) hyper += gaussian_matrix(n, spec.dim, spec.noise_sigma, rng);

  Matrix all(static_cast<Eigen::Index>(2 * n), static_cast<Eigen::Index>(spec.dim));
  all.topRows(static_cast<Eigen::Index>(n)) = hypo;
  all.bottomRows(static_cast<Eigen::Index>(n)) = hyper;
  auto vocab = numbered("hypo", n);
  for (std::size_t i = 0; i < n; ++i) vocab.push_back("hyper" + std::to_string(i));

  HypernymDataset train, test;
  for (std::size_t i = 0; i < n; ++i) {
    HypernymEntry e{"hypo" + std::to_string(i), {"hyper" + std::to_string(i)}};
    (i < n_train ? train : test).entries.push_back(std::move(e));
  }
  return Taxonomy{EmbeddingSpace(std::move(vocab), std::move(all)), std::move(train), std::move(test),
                  LinearMap(std::move(true_map), false)};
}

}  // namespace meemi
