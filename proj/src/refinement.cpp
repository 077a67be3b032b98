#include "meemi/refinement.hpp"

#include "meemi/parallel.hpp"

#include <cmath>
#include <fstream>
#include <future>

namespace meemi {

namespace {

double cosine(const Eigen::Ref<const RowVector>& a, const Eigen::Ref<const RowVector>& b) {
  const double denom = a.norm() * b.norm();
  if (denom == 0.0) throw Error("cosine of a zero vector is undefined");
  return a.dot(b) / denom;
}

}  // namespace

AverageProblems compute_averages(const AlignedPair& aligned, const BilingualLexicon& lexicon) {
  check_aligned(aligned);
  ResolvedLexicon resolved = resolve(lexicon, aligned.source, aligned.target);
  PairedData pairs = gather_pairs(aligned.source, aligned.target, resolved.rows);
  Matrix mu = 0.5 * (pairs.inputs + pairs.targets);
  const std::size_t n = resolved.rows.size();
  return AverageProblems{PairedData(pairs.inputs, mu), PairedData(std::move(pairs.targets), mu), n,
                         resolved.total - n};
}

MeemiModel fit_meemi(const AlignedPair& aligned, const BilingualLexicon& lexicon) {
  AverageProblems problems = compute_averages(aligned, lexicon);
  const auto policy = worker_count() > 1 ? std::launch::async : std::launch::deferred;
  auto target_fit = std::async(policy, [&] { return fit_least_squares(problems.target); });
  LinearMap source_map = fit_least_squares(problems.source);
  return MeemiModel{std::move(source_map), target_fit.get(), problems.resolved};
}

AlignedPair apply_meemi(const MeemiModel& model, const AlignedPair& aligned) {
  check_aligned(aligned);
  if (model.map_source.input_dim() != aligned.source.dim() || model.map_target.input_dim() != aligned.target.dim()) {
    throw Error("refinement model dimension does not match the aligned spaces");
  }
  return AlignedPair{apply_map(model.map_source, aligned.source), apply_map(model.map_target, aligned.target),
                     aligned.map, aligned.iterations_run};
}

SimilarityShift similarity_shift_report(const AlignedPair& before, const AlignedPair& after,
                                        const BilingualLexicon& lexicon) {
  ResolvedLexicon rb = resolve(lexicon, before.source, before.target);
  ResolvedLexicon ra = resolve(lexicon, after.source, after.target);
  if (rb.rows.size() != ra.rows.size()) {
    throw Error("lexicon resolves differently before and after refinement");
  }
  SimilarityShift shift;
  shift.pairs = rb.rows.size();
  std::vector<double> deltas(shift.pairs);
  std::size_t positive = 0;
  for (std::size_t i = 0; i < shift.pairs; ++i) {
    const auto& b = rb.rows[i];
    const auto& a = ra.rows[i];
    const double cb = cosine(before.source.matrix().row(static_cast<Eigen::Index>(b.source)),
                             before.target.matrix().row(static_cast<Eigen::Index>(b.target)));
    const double ca = cosine(after.source.matrix().row(static_cast<Eigen::Index>(a.source)),
                             after.target.matrix().row(static_cast<Eigen::Index>(a.target)));
    deltas[i] = ca - cb;
    if (deltas[i] > 0.0) ++positive;
    shift.mean_delta += deltas[i];
  }
  const auto n = static_cast<double>(shift.pairs);
  shift.mean_delta /= n;
  double var = 0.0;
  for (double d : deltas) var += (d - shift.mean_delta) * (d - shift.mean_delta);
  shift.std_delta = std::sqrt(var / n);
  shift.fraction_positive = static_cast<double>(positive) / n;
  return shift;
}

void save_model(const MeemiModel& model, const std::filesystem::path& manifest,
                const std::filesystem::path& source_map, const std::filesystem::path& target_map) {
  const auto base = manifest.parent_path();
  save_map(model.map_source, source_map.is_absolute() ? source_map : base / source_map);
  save_map(model.map_target, target_map.is_absolute() ? target_map : base / target_map);
  std::ofstream out(manifest, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write model manifest: " + manifest.string());
  out << source_map.generic_string() << '\n' << target_map.generic_string() << '\n' << model.train_pair_count << '\n';
  out.flush();
  if (!out) throw Error("write failed: " + manifest.string());
}

MeemiModel load_model(const std::filesystem::path& manifest) {
  std::ifstream in(manifest);
  if (!in) throw Error("cannot open model manifest: " + manifest.string());
  std::string lines[3];
  for (std::size_t i = 0; i < 3; ++i) {
    if (!std::getline(in, lines[i])) throw ParseError(manifest.string(), i + 1, "manifest needs 3 lines");
    lines[i] = std::string(strip_cr(lines[i]));
  }
  auto count = parse_real(lines[2]);
  if (!count || *count < 0 || std::floor(*count) != *count) {
    throw ParseError(manifest.string(), 3, "malformed train pair count");
  }
  const auto base = manifest.parent_path();
  auto locate = [&](const std::string& p) {
    std::filesystem::path path(p);
    return path.is_absolute() ? path : base / path;
  };
  return MeemiModel{load_map(locate(lines[0])), load_map(locate(lines[1])), static_cast<std::size_t>(*count)};
}

}  // namespace meemi
