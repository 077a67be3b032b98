#include "meemi/alignment.hpp"

#include "meemi/parallel.hpp"

#include <limits>
#include <optional>

namespace meemi {

std::vector<NormalizationStep> parse_normalization(std::string_view text) {
  std::vector<NormalizationStep> steps;
  if (text.empty() || text == "none") return steps;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    auto item = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (item == "unit") {
      steps.push_back(NormalizationStep::unit);
    } else if (item == "center") {
      steps.push_back(NormalizationStep::center);
    } else {
      throw Error("unknown normalization step '" + std::string(item) + "' (expected unit or center)");
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return steps;
}

std::string format_normalization(std::span<const NormalizationStep> steps) {
  if (steps.empty()) return "none";
  std::string out;
  for (auto s : steps) {
    if (!out.empty()) out += ',';
    out += s == NormalizationStep::unit ? "unit" : "center";
  }
  return out;
}

EmbeddingSpace apply_normalization(const EmbeddingSpace& space, std::span<const NormalizationStep> steps) {
  EmbeddingSpace out = space;
  for (auto s : steps) out = s == NormalizationStep::unit ? normalize_unit(out) : mean_center(out);
  return out;
}

void AlignmentConfig::validate() const {
  if (max_iterations < 1) throw Error("max_iterations must be at least 1");
  if (!(convergence_tol > 0.0)) throw Error("convergence_tol must be positive");
  if (induction_vocab_cap < 1) throw Error("induction_vocab_cap must be at least 1");
}

void check_aligned(const AlignedPair& aligned) {
  if (aligned.source.dim() != aligned.target.dim()) {
    throw Error("aligned spaces differ in dimension (" + std::to_string(aligned.source.dim()) + " vs " +
                std::to_string(aligned.target.dim()) + ")");
  }
  if (!aligned.map.orthogonal()) throw Error("alignment map must be orthogonal");
}

PairedData gather_pairs(const EmbeddingSpace& source, const EmbeddingSpace& target,
                        std::span<const IndexPair> rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  Matrix a(n, static_cast<Eigen::Index>(source.dim()));
  Matrix b(n, static_cast<Eigen::Index>(target.dim()));
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& r = rows[static_cast<std::size_t>(i)];
    a.row(i) = source.matrix().row(static_cast<Eigen::Index>(r.source));
    b.row(i) = target.matrix().row(static_cast<Eigen::Index>(r.target));
  }
  return PairedData(std::move(a), std::move(b));
}

InducedDictionary induce_nearest(const EmbeddingSpace& mapped_source, const EmbeddingSpace& target,
                                 std::size_t vocab_cap) {
  if (vocab_cap == 0) throw Error("induction vocabulary cap must be at least 1");
  if (mapped_source.empty() || target.empty()) throw Error("cannot induce a dictionary from an empty space");
  if (mapped_source.dim() != target.dim()) throw Error("spaces differ in dimension");

  const auto ns = static_cast<Eigen::Index>(std::min(vocab_cap, mapped_source.size()));
  const auto nt = static_cast<Eigen::Index>(std::min(vocab_cap, target.size()));
  Matrix src = mapped_source.matrix().topRows(ns);
  Matrix tgt = target.matrix().topRows(nt);
  for (Eigen::Index i = 0; i < ns; ++i) {
    const double n = src.row(i).norm();
    if (n == 0.0) throw Error("zero vector for source token '" + mapped_source.token(i) + "'");
    src.row(i) /= n;
  }
  for (Eigen::Index i = 0; i < nt; ++i) {
    const double n = tgt.row(i).norm();
    if (n == 0.0) throw Error("zero vector for target token '" + target.token(i) + "'");
    tgt.row(i) /= n;
  }

  std::vector<IndexPair> rows(static_cast<std::size_t>(ns));
  std::vector<double> cosines(static_cast<std::size_t>(ns));
  for_each_block(static_cast<std::size_t>(ns), 64, [&](std::size_t begin, std::size_t end) {
    const auto len = static_cast<Eigen::Index>(end - begin);
    const Matrix sims = src.middleRows(static_cast<Eigen::Index>(begin), len) * tgt.transpose();
    for (Eigen::Index r = 0; r < len; ++r) {
      Eigen::Index best = 0;
      double best_score = -std::numeric_limits<double>::infinity();
      for (Eigen::Index c = 0; c < nt; ++c) {
        if (sims(r, c) > best_score) {
          best_score = sims(r, c);
          best = c;
        }
      }
      const std::size_t i = begin + static_cast<std::size_t>(r);
      rows[i] = {i, static_cast<std::size_t>(best)};
      cosines[i] = best_score;
    }
  });

  InducedDictionary out;
  double sum = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.lexicon.add({mapped_source.token(rows[i].source), target.token(rows[i].target)});
    sum += cosines[i];
  }
  out.mean_cosine = sum / static_cast<double>(rows.size());
  out.rows = std::move(rows);
  out.cosines = std::move(cosines);
  return out;
}

BilingualLexicon induce_dictionary(const AlignedPair& aligned, std::size_t vocab_cap) {
  return induce_nearest(aligned.source, aligned.target, vocab_cap).lexicon;
}

namespace {

void check_dims(const EmbeddingSpace& source, const EmbeddingSpace& target) {
  if (source.dim() != target.dim()) {
    throw Error("source dimension " + std::to_string(source.dim()) + " differs from target dimension " +
                std::to_string(target.dim()));
  }
}

// Both spaces are already normalized.
AlignedPair self_learn(const EmbeddingSpace& source, const EmbeddingSpace& target, std::vector<IndexPair> rows,
                       const AlignmentConfig& config) {
  std::optional<AlignedPair> best;
  double best_score = -std::numeric_limits<double>::infinity();
  double previous = -std::numeric_limits<double>::infinity();
  std::size_t iteration = 0;
  while (iteration < config.max_iterations) {
    ++iteration;
    LinearMap map = fit_procrustes(gather_pairs(source, target, rows));
    EmbeddingSpace mapped = apply_map(map, source);
    InducedDictionary induced = induce_nearest(mapped, target, config.induction_vocab_cap);
    const double score = induced.mean_cosine;
    if (score > best_score) {
      best_score = score;
      best.emplace(AlignedPair{std::move(mapped), target, std::move(map), 0});
    }
    if (score - previous < config.convergence_tol) break;
    previous = score;
    rows = std::move(induced.rows);
  }
  best->iterations_run = iteration;
  return std::move(*best);
}

}  // namespace

AlignedPair iterate_self_learning(const EmbeddingSpace& source, const EmbeddingSpace& target,
                                  const BilingualLexicon& seed, const AlignmentConfig& config) {
  config.validate();
  check_dims(source, target);
  EmbeddingSpace src = apply_normalization(source, config.normalize);
  EmbeddingSpace tgt = apply_normalization(target, config.normalize);
  ResolvedLexicon resolved = resolve(seed, src, tgt);
  return self_learn(src, tgt, std::move(resolved.rows), config);
}

AlignedPair align_supervised(const EmbeddingSpace& source, const EmbeddingSpace& target,
                             const BilingualLexicon& lexicon, const AlignmentConfig& config) {
  config.validate();
  check_dims(source, target);
  EmbeddingSpace src = apply_normalization(source, config.normalize);
  EmbeddingSpace tgt = apply_normalization(target, config.normalize);
  ResolvedLexicon resolved = resolve(lexicon, src, tgt);
  if (config.self_learning) return self_learn(src, tgt, std::move(resolved.rows), config);

  LinearMap map = fit_procrustes(gather_pairs(src, tgt, resolved.rows));
  EmbeddingSpace mapped = apply_map(map, src);
  return AlignedPair{std::move(mapped), std::move(tgt), std::move(map), 1};
}

}  // namespace meemi
