#include "meemi/retrieval.hpp"

#include "meemi/parallel.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace meemi {

namespace {

constexpr std::size_t kBlockRows = 64;

bool better(const Neighbor& a, const Neighbor& b) {
  if (a.score != b.score) return a.score > b.score;
  return a.index < b.index;
}

RowVector unit_query(const RowVector& query, std::size_t dim) {
  if (static_cast<std::size_t>(query.size()) != dim) {
    throw Error("query dimension " + std::to_string(query.size()) + " does not match index dimension " +
                std::to_string(dim));
  }
  const double norm = query.norm();
  if (norm == 0.0) throw Error("cannot retrieve neighbours of a zero query vector");
  return query / norm;
}

double mean_of_top(std::vector<double>& values, std::size_t k) {
  k = std::min(k, values.size());
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(k - 1), values.end(),
                   std::greater<>());
  double sum = 0.0;
  for (std::size_t i = 0; i < k; ++i) sum += values[i];
  return sum / static_cast<double>(k);
}

template <typename Fn>
void for_each_row_block(std::size_t rows, Fn&& fn) {
  meemi::for_each_block(rows, kBlockRows, std::forward<Fn>(fn));
}

}  // namespace

std::string_view to_string(RetrievalMode mode) {
  return mode == RetrievalMode::cosine ? "cosine" : "csls";
}

RetrievalMode parse_retrieval_mode(std::string_view text) {
  if (text == "cosine") return RetrievalMode::cosine;
  if (text == "csls") return RetrievalMode::csls;
  throw Error("unknown retrieval mode '" + std::string(text) + "' (expected cosine or csls)");
}

std::vector<Neighbor> top_k(std::span<const double> scores, std::size_t k) {
  k = std::min(k, scores.size());
  std::vector<Neighbor> all(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) all[i] = {i, scores[i]};
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k), all.end(), better);
  all.resize(k);
  return all;
}

Eigen::VectorXd mean_top_k_similarity(const Matrix& rows, const Matrix& against, std::size_t k,
                                      bool exclude_self) {
  const auto n = static_cast<std::size_t>(rows.rows());
  const auto m = static_cast<std::size_t>(against.rows());
  const std::size_t available = exclude_self ? m - 1 : m;
  if (k == 0 || k > available) {
    throw Error("neighbourhood size " + std::to_string(k) + " exceeds the " + std::to_string(available) +
                " available rows");
  }
  Eigen::VectorXd out(static_cast<Eigen::Index>(n));
  for_each_row_block(n, [&](std::size_t begin, std::size_t end) {
    const auto len = static_cast<Eigen::Index>(end - begin);
    const Matrix sims = rows.middleRows(static_cast<Eigen::Index>(begin), len) * against.transpose();
    std::vector<double> buf(m);
    for (Eigen::Index r = 0; r < len; ++r) {
      std::copy(sims.row(r).data(), sims.row(r).data() + m, buf.begin());
      if (exclude_self) buf[begin + static_cast<std::size_t>(r)] = -std::numeric_limits<double>::infinity();
      out(static_cast<Eigen::Index>(begin) + r) = mean_of_top(buf, k);
    }
  });
  return out;
}

RetrievalIndex::RetrievalIndex(const EmbeddingSpace& targets, std::size_t csls_k)
    : space_(normalize_unit(targets)), csls_k_(csls_k) {
  if (space_.empty()) throw Error("cannot index an empty space");
  if (csls_k_ == 0 || csls_k_ >= space_.size()) {
    throw Error("csls_k must lie in [1, " + std::to_string(space_.size() - 1) + "], got " +
                std::to_string(csls_k_));
  }
  densities_ = mean_top_k_similarity(space_.matrix(), space_.matrix(), csls_k_, true);
}

RetrievalIndex::RetrievalIndex(const EmbeddingSpace& targets, const EmbeddingSpace& sources, std::size_t csls_k)
    : space_(normalize_unit(targets)), csls_k_(csls_k), source_densities_(true) {
  if (space_.empty() || sources.empty()) throw Error("cannot index an empty space");
  if (sources.dim() != space_.dim()) throw Error("source and target spaces differ in dimension");
  if (csls_k_ == 0 || csls_k_ > sources.size() || csls_k_ > space_.size()) {
    throw Error("csls_k " + std::to_string(csls_k_) + " exceeds the vocabulary size");
  }
  const EmbeddingSpace src = normalize_unit(sources);
  densities_ = mean_top_k_similarity(space_.matrix(), src.matrix(), csls_k_, false);
}

RetrievalIndex::RetrievalIndex(NoDensities, const EmbeddingSpace& targets)
    : space_(normalize_unit(targets)), csls_k_(0) {
  if (space_.empty()) throw Error("cannot index an empty space");
}

RetrievalIndex RetrievalIndex::cosine_only(const EmbeddingSpace& targets) {
  return RetrievalIndex(NoDensities{}, targets);
}

double RetrievalIndex::query_density(const RowVector& query) const {
  if (!supports_csls()) throw Error("index was built without CSLS densities");
  const RowVector q = unit_query(query, space_.dim());
  const Eigen::VectorXd sims = space_.matrix() * q.transpose();
  std::vector<double> buf(sims.data(), sims.data() + sims.size());
  return mean_of_top(buf, csls_k_);
}

RetrievalIndex build_index(const EmbeddingSpace& space, std::size_t csls_k) {
  return RetrievalIndex(space, csls_k);
}

std::vector<Neighbor> knn_cosine(const RetrievalIndex& index, const RowVector& query, std::size_t k) {
  if (k == 0) throw Error("k must be at least 1");
  const RowVector q = unit_query(query, index.space().dim());
  const Eigen::VectorXd sims = index.space().matrix() * q.transpose();
  return top_k(std::span<const double>(sims.data(), static_cast<std::size_t>(sims.size())), k);
}

std::vector<Neighbor> knn_csls(const RetrievalIndex& index, const RowVector& query, double query_density,
                               std::size_t k) {
  if (k == 0) throw Error("k must be at least 1");
  if (!index.supports_csls()) throw Error("index was built without CSLS densities");
  const RowVector q = unit_query(query, index.space().dim());
  Eigen::VectorXd scores = 2.0 * (index.space().matrix() * q.transpose());
  scores.array() -= query_density;
  scores -= index.densities();
  return top_k(std::span<const double>(scores.data(), static_cast<std::size_t>(scores.size())), k);
}

std::vector<Neighbor> knn_csls(const RetrievalIndex& index, const RowVector& query, std::size_t k) {
  return knn_csls(index, query, index.query_density(query), k);
}

std::vector<Neighbor> knn(const RetrievalIndex& index, const RowVector& query, std::size_t k,
                          RetrievalMode mode) {
  return mode == RetrievalMode::cosine ? knn_cosine(index, query, k) : knn_csls(index, query, k);
}

std::vector<std::vector<Neighbor>> knn_batch(const RetrievalIndex& index, const Matrix& queries, std::size_t k,
                                             RetrievalMode mode) {
  if (k == 0) throw Error("k must be at least 1");
  const std::size_t dim = index.space().dim();
  if (static_cast<std::size_t>(queries.cols()) != dim) {
    throw Error("query dimension " + std::to_string(queries.cols()) + " does not match index dimension " +
                std::to_string(dim));
  }
  if (mode == RetrievalMode::csls && !index.supports_csls()) {
    throw Error("index was built without CSLS densities");
  }
  const auto n = static_cast<std::size_t>(queries.rows());
  const auto& targets = index.space().matrix();
  std::vector<std::vector<Neighbor>> results(n);

  for_each_row_block(n, [&](std::size_t begin, std::size_t end) {
    const auto len = static_cast<Eigen::Index>(end - begin);
    Matrix block = queries.middleRows(static_cast<Eigen::Index>(begin), len);
    for (Eigen::Index r = 0; r < len; ++r) {
      const double norm = block.row(r).norm();
      if (norm == 0.0) throw Error("cannot retrieve neighbours of a zero query vector");
      block.row(r) /= norm;
    }
    Matrix scores = block * targets.transpose();
    std::vector<double> buf;
    for (Eigen::Index r = 0; r < len; ++r) {
      if (mode == RetrievalMode::csls) {
        buf.assign(scores.row(r).data(), scores.row(r).data() + scores.cols());
        const double r_t = mean_of_top(buf, index.csls_k());
        scores.row(r) *= 2.0;
        scores.row(r).array() -= r_t;
        scores.row(r) -= index.densities().transpose();
      }
      results[begin + static_cast<std::size_t>(r)] =
          top_k(std::span<const double>(scores.row(r).data(), static_cast<std::size_t>(scores.cols())), k);
    }
  });
  return results;
}

}  // namespace meemi
