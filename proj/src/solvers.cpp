#include "meemi/solvers.hpp"

#include <fstream>
#include <string>

namespace meemi {

LinearMap::LinearMap(Matrix matrix, bool orthogonal) : matrix_(std::move(matrix)), orthogonal_(orthogonal) {
  if (matrix_.size() == 0) throw Error("linear map has no entries");
  if (!matrix_.allFinite()) throw Error("linear map has non-finite entries");
  if (orthogonal_) {
    if (matrix_.rows() != matrix_.cols()) throw Error("orthogonal map must be square");
    const Matrix gram = matrix_.transpose() * matrix_;
    const double err = (gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
    if (err > kOrthogonalityTolerance) {
      throw Error("map flagged orthogonal deviates from orthogonality by " + format_real(err));
    }
  }
}

LinearMap LinearMap::identity(std::size_t dim) {
  const auto d = static_cast<Eigen::Index>(dim);
  return LinearMap(Matrix::Identity(d, d), true);
}

PairedData::PairedData(Matrix in, Matrix out) : inputs(std::move(in)), targets(std::move(out)) {
  if (inputs.rows() == 0) throw Error("paired data has no rows");
  if (inputs.rows() != targets.rows()) {
    throw Error("paired data row counts differ: " + std::to_string(inputs.rows()) + " vs " +
                std::to_string(targets.rows()));
  }
}

namespace {

void require_finite(const PairedData& data) {
  if (!data.inputs.allFinite() || !data.targets.allFinite()) {
    throw Error("paired data contains non-finite values");
  }
}

}  // namespace

LinearMap fit_procrustes(const PairedData& data) {
  if (data.inputs.cols() != data.targets.cols()) {
    throw Error("Procrustes needs equal input and target dimensions (" +
                std::to_string(data.inputs.cols()) + " vs " + std::to_string(data.targets.cols()) + ")");
  }
  require_finite(data);
  const Eigen::Index n = data.inputs.rows();
  const Eigen::Index d = data.inputs.cols();
  if (n >= d) {
    const Eigen::MatrixXd cross = data.inputs.transpose() * data.targets;
    Eigen::BDCSVD<Eigen::MatrixXd> svd(cross, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Matrix w = svd.matrixU() * svd.matrixV().transpose();
    return LinearMap(std::move(w), true);
  }

  // Fewer pairs than dimensions: with A^T = Qa Ra and B^T = Qb Rb, A^T B =
  // Qa (Ra Rb^T) Qb^T, so an SVD of the n x n core extends to a full SVD of
  // A^T B by pairing the orthogonal complements of Qa and Qb.
  const Eigen::HouseholderQR<Eigen::MatrixXd> qa(data.inputs.transpose());
  const Eigen::HouseholderQR<Eigen::MatrixXd> qb(data.targets.transpose());
  const Eigen::MatrixXd ra = qa.matrixQR().topRows(n).triangularView<Eigen::Upper>();
  const Eigen::MatrixXd rb = qb.matrixQR().topRows(n).triangularView<Eigen::Upper>();
  Eigen::BDCSVD<Eigen::MatrixXd> svd(ra * rb.transpose(), Eigen::ComputeFullU | Eigen::ComputeFullV);

  Eigen::MatrixXd core = Eigen::MatrixXd::Identity(d, d);
  core.topLeftCorner(n, n) = svd.matrixU() * svd.matrixV().transpose();
  const Eigen::MatrixXd left = qa.householderQ() * core;
  Matrix w = left * qb.householderQ().transpose();
  return LinearMap(std::move(w), true);
}

LinearMap fit_least_squares(const PairedData& data) {
  require_finite(data);
  const Eigen::MatrixXd a = data.inputs;
  const Eigen::MatrixXd b = data.targets;
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(a);
  Matrix x = cod.solve(b);
  return LinearMap(std::move(x), false);
}

EmbeddingSpace apply_map(const LinearMap& map, const EmbeddingSpace& space) {
  if (space.dim() != map.input_dim()) {
    throw Error("map expects dimension " + std::to_string(map.input_dim()) + ", space has " +
                std::to_string(space.dim()));
  }
  Matrix mapped = space.matrix() * map.matrix();
  return EmbeddingSpace(space.vocab(), std::move(mapped));
}

void save_map(const LinearMap& map, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write map file: " + path.string());
  const auto& m = map.matrix();
  out << m.rows() << ' ' << m.cols() << ' ' << (map.orthogonal() ? 1 : 0) << '\n';
  std::string row;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    row.clear();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) row += ' ';
      row += format_real(m(i, j));
    }
    row += '\n';
    out << row;
  }
  out.flush();
  if (!out) throw Error("write failed: " + path.string());
}

LinearMap load_map(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open map file: " + path.string());
  const std::string name = path.string();
  std::string line;
  if (!std::getline(in, line)) throw ParseError(name, 1, "empty map file");
  auto header = split_whitespace(strip_cr(line));
  if (header.size() != 3) throw ParseError(name, 1, "expected header '<d_in> <d_out> <0|1>'");
  auto rows = parse_real(header[0]);
  auto cols = parse_real(header[1]);
  if (!rows || !cols || *rows < 1 || *cols < 1 || (header[2] != "0" && header[2] != "1")) {
    throw ParseError(name, 1, "malformed map header");
  }
  const bool orthogonal = header[2] == "1";
  const auto r = static_cast<Eigen::Index>(*rows);
  const auto c = static_cast<Eigen::Index>(*cols);
  Matrix m(r, c);
  for (Eigen::Index i = 0; i < r; ++i) {
    const std::size_t line_no = static_cast<std::size_t>(i) + 2;
    if (!std::getline(in, line)) throw ParseError(name, line_no, "missing matrix row");
    auto fields = split_whitespace(strip_cr(line));
    if (static_cast<Eigen::Index>(fields.size()) != c) {
      throw ParseError(name, line_no, "expected " + std::to_string(c) + " values");
    }
    for (Eigen::Index j = 0; j < c; ++j) {
      auto v = parse_real(fields[static_cast<std::size_t>(j)]);
      if (!v) throw ParseError(name, line_no, "malformed number");
      m(i, j) = *v;
    }
  }
  return LinearMap(std::move(m), orthogonal);
}

}  // namespace meemi
