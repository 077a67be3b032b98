// Reference implementations used only by tests. They are written from the
// textbook definitions with plain loops and no shared code with the library.
#pragma once

#include "meemi/common.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

using meemi::Matrix;

inline Matrix gaussian(std::size_t rows, std::size_t cols, std::mt19937_64& rng, double sigma = 1.0) {
  std::normal_distribution<double> n(0.0, sigma);
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = n(rng);
  return m;
}

// Solves (A^T A) X = A^T B by Gauss-Jordan elimination with partial pivoting.
inline Matrix normal_equations(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.rows(), d = a.cols(), m = b.cols();
  std::vector<std::vector<double>> g(d, std::vector<double>(d + m, 0.0));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t r = 0; r < n; ++r) g[i][j] += a(r, i) * a(r, j);
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t r = 0; r < n; ++r) g[i][d + j] += a(r, i) * b(r, j);
  }
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t pivot = c;
    for (std::size_t r = c + 1; r < d; ++r)
      if (std::abs(g[r][c]) > std::abs(g[pivot][c])) pivot = r;
    std::swap(g[c], g[pivot]);
    const double p = g[c][c];
    for (auto& v : g[c]) v /= p;
    for (std::size_t r = 0; r < d; ++r) {
      if (r == c) continue;
      const double f = g[r][c];
      for (std::size_t j = 0; j < d + m; ++j) g[r][j] -= f * g[c][j];
    }
  }
  Matrix x(d, m);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < m; ++j) x(i, j) = g[i][d + j];
  return x;
}

inline double cosine(const Matrix& a, std::size_t i, const Matrix& b, std::size_t j) {
  double dot = 0, na = 0, nb = 0;
  for (Eigen::Index c = 0; c < a.cols(); ++c) {
    dot += a(i, c) * b(j, c);
    na += a(i, c) * a(i, c);
    nb += b(j, c) * b(j, c);
  }
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

inline std::vector<std::size_t> rank_indices(const std::vector<double>& scores, std::size_t k) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return scores[x] > scores[y]; });
  order.resize(std::min(k, order.size()));
  return order;
}

// Mean of the k largest cosines of row i of `rows` against `against`,
// optionally skipping row i of `against`.
inline double density(const Matrix& rows, std::size_t i, const Matrix& against, std::size_t k, bool skip_self) {
  std::vector<double> sims;
  for (std::size_t j = 0; j < static_cast<std::size_t>(against.rows()); ++j) {
    if (skip_self && j == i) continue;
    sims.push_back(cosine(rows, i, against, j));
  }
  std::sort(sims.begin(), sims.end(), std::greater<>());
  double sum = 0;
  for (std::size_t t = 0; t < k; ++t) sum += sims[t];
  return sum / static_cast<double>(k);
}

inline std::vector<std::size_t> knn_cosine(const Matrix& targets, const Matrix& query, std::size_t k) {
  std::vector<double> s(targets.rows());
  for (std::size_t j = 0; j < s.size(); ++j) s[j] = cosine(query, 0, targets, j);
  return rank_indices(s, k);
}

// CSLS(x, y) = 2 cos(x, y) - r_T(x) - r_S(y). With no `sources`, r_S(y) is
// taken over the other target rows.
inline std::vector<double> csls_scores(const Matrix& targets, const Matrix* sources, const Matrix& query,
                                       std::size_t csls_k) {
  const double r_query = density(query, 0, targets, csls_k, false);
  std::vector<double> s(targets.rows());
  for (std::size_t j = 0; j < s.size(); ++j) {
    const double r_target = sources ? density(targets, j, *sources, csls_k, false)
                                    : density(targets, j, targets, csls_k, true);
    s[j] = 2.0 * cosine(query, 0, targets, j) - r_query - r_target;
  }
  return s;
}

inline double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

// Rank = 1 + (number smaller) + (number equal - 1) / 2.
inline std::vector<double> ranks(const std::vector<double>& v) {
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    double less = 0, equal = 0;
    for (double w : v) {
      if (w < v[i]) less += 1;
      if (w == v[i]) equal += 1;
    }
    r[i] = 1.0 + less + (equal - 1.0) / 2.0;
  }
  return r;
}

inline double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  return pearson(ranks(x), ranks(y));
}

class TempDir {
 public:
  TempDir() {
    std::string pattern = (std::filesystem::temp_directory_path() / "meemi-test-XXXXXX").string();
    path_ = ::mkdtemp(pattern.data());
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline std::filesystem::path write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  return path;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace oracle

namespace oracle {

// Per-target r_S(y) for CSLS; over the other target rows when `sources` is null.
inline std::vector<double> csls_densities(const Matrix& targets, const Matrix* sources, std::size_t csls_k) {
  std::vector<double> r(targets.rows());
  for (std::size_t j = 0; j < r.size(); ++j)
    r[j] = sources ? density(targets, j, *sources, csls_k, false) : density(targets, j, targets, csls_k, true);
  return r;
}

inline std::vector<double> csls_scores(const Matrix& targets, const std::vector<double>& densities,
                                       const Matrix& query, std::size_t csls_k) {
  const double r_query = density(query, 0, targets, csls_k, false);
  std::vector<double> s(targets.rows());
  for (std::size_t j = 0; j < s.size(); ++j) s[j] = 2.0 * cosine(query, 0, targets, j) - r_query - densities[j];
  return s;
}

}  // namespace oracle
