#include "meemi/embeddings.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace meemi {

namespace {

bool has_whitespace(std::string_view token) {
  return std::any_of(token.begin(), token.end(), [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
  });
}

bool is_unsigned_integer(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace

EmbeddingSpace::EmbeddingSpace(std::vector<std::string> vocab, Matrix matrix)
    : vocab_(std::move(vocab)), matrix_(std::move(matrix)) {
  if (matrix_.cols() <= 0) throw Error("embedding dimension must be positive");
  if (static_cast<std::size_t>(matrix_.rows()) != vocab_.size()) {
    throw Error("embedding matrix has " + std::to_string(matrix_.rows()) + " rows for " +
                std::to_string(vocab_.size()) + " tokens");
  }
  if (!matrix_.allFinite()) throw Error("embedding matrix has non-finite components");
  index_.reserve(vocab_.size());
  for (std::size_t i = 0; i < vocab_.size(); ++i) {
    const auto& tok = vocab_[i];
    if (tok.empty() || has_whitespace(tok)) throw Error("invalid token '" + tok + "'");
    if (!index_.emplace(tok, i).second) throw Error("duplicate token '" + tok + "'");
  }
}

std::optional<std::size_t> EmbeddingSpace::find(std::string_view token) const {
  if (auto it = index_.find(std::string(token)); it != index_.end()) return it->second;
  if (auto it = index_.find(fold_lower(token)); it != index_.end()) return it->second;
  return std::nullopt;
}

std::optional<RowVector> EmbeddingSpace::lookup(std::string_view token) const {
  auto i = find(token);
  if (!i) return std::nullopt;
  return RowVector(matrix_.row(static_cast<Eigen::Index>(*i)));
}

EmbeddingSpace load_space(const std::filesystem::path& path, std::optional<std::size_t> limit,
                          LoadStats* stats) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open embeddings file: " + path.string());
  const std::string name = path.string();

  LoadStats local;
  std::vector<std::string> vocab;
  std::vector<double> values;
  std::unordered_map<std::string, std::size_t> seen;
  std::size_t dim = 0;
  std::size_t line_no = 0;
  std::string line;

  while (std::getline(in, line)) {
    ++line_no;
    auto text = strip_cr(line);
    auto fields = split_whitespace(text);
    if (fields.empty()) continue;

    if (line_no == 1 && fields.size() == 2 && is_unsigned_integer(fields[0]) &&
        is_unsigned_integer(fields[1])) {
      local.had_header = true;
      dim = std::stoul(std::string(fields[1]));
      if (dim == 0) throw ParseError(name, line_no, "header declares dimension 0");
      continue;
    }
    if (limit && vocab.size() >= *limit) break;

    if (fields.size() < 2) throw ParseError(name, line_no, "row has no vector components");
    const std::size_t arity = fields.size() - 1;
    if (dim == 0) dim = arity;
    if (arity != dim) {
      throw ParseError(name, line_no,
                       "expected " + std::to_string(dim) + " components, found " + std::to_string(arity));
    }
    ++local.rows_read;

    std::string token(fields[0]);
    if (seen.count(token)) {
      ++local.duplicates_skipped;
      continue;
    }

    const std::size_t offset = values.size();
    values.resize(offset + dim);
    double norm2 = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
      auto v = parse_real(fields[j + 1]);
      if (!v) throw ParseError(name, line_no, "malformed number '" + std::string(fields[j + 1]) + "'");
      if (!std::isfinite(*v)) throw ParseError(name, line_no, "non-finite component");
      values[offset + j] = *v;
      norm2 += *v * *v;
    }
    if (norm2 == 0.0) throw ParseError(name, line_no, "zero vector for token '" + token + "'");
    seen.emplace(token, vocab.size());
    vocab.push_back(std::move(token));
  }

  if (vocab.empty()) throw Error("no vectors in embeddings file: " + name);
  Matrix matrix = Eigen::Map<const Matrix>(values.data(), static_cast<Eigen::Index>(vocab.size()),
                                           static_cast<Eigen::Index>(dim));
  if (stats) *stats = local;
  return EmbeddingSpace(std::move(vocab), std::move(matrix));
}

void save_space(const EmbeddingSpace& space, const std::filesystem::path& path) {
  if (space.empty()) throw Error("refusing to write an empty embedding space");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write embeddings file: " + path.string());
  const auto& m = space.matrix();
  out << space.size() << ' ' << space.dim() << '\n';
  std::string row;
  for (std::size_t i = 0; i < space.size(); ++i) {
    row = space.token(i);
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row += ' ';
      row += format_real(m(static_cast<Eigen::Index>(i), j));
    }
    row += '\n';
    out << row;
  }
  out.flush();
  if (!out) throw Error("write failed: " + path.string());
}

EmbeddingSpace normalize_unit(const EmbeddingSpace& space) {
  Matrix m = space.matrix();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const double norm = m.row(i).norm();
    if (norm == 0.0) throw Error("cannot normalize zero vector of token '" + space.token(i) + "'");
    m.row(i) /= norm;
  }
  return EmbeddingSpace(space.vocab(), std::move(m));
}

EmbeddingSpace mean_center(const EmbeddingSpace& space) {
  if (space.empty()) throw Error("cannot center an empty space");
  Matrix m = space.matrix();
  const RowVector mean = m.colwise().mean();
  m.rowwise() -= mean;
  return EmbeddingSpace(space.vocab(), std::move(m));
}

}  // namespace meemi
