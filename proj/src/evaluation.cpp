#include "meemi/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <unordered_map>

namespace meemi {

std::string_view to_string(Task task) {
  switch (task) {
    case Task::bli:
      return "bli";
    case Task::similarity:
      return "similarity";
    case Task::hypernym:
      return "hypernym";
  }
  return "unknown";
}

double EvalReport::metric(std::string_view name) const {
  for (const auto& [key, value] : metrics) {
    if (key == name) return value;
  }
  throw Error("report has no metric '" + std::string(name) + "'");
}

std::string format_text(const EvalReport& report) {
  std::vector<std::pair<std::string, std::string>> rows{
      {"task", std::string(to_string(report.task))},
      {"dataset", report.dataset},
      {"retrieval", std::string(to_string(report.retrieval))},
      {"resolved", std::to_string(report.resolved) + "/" + std::to_string(report.total)},
  };
  char buf[64];
  for (const auto& [key, value] : report.metrics) {
    std::snprintf(buf, sizeof buf, "%.4f", value);
    rows.emplace_back(key, buf);
  }
  std::size_t width = 0;
  for (const auto& r : rows) width = std::max(width, r.first.size());
  std::string out;
  for (const auto& [key, value] : rows) {
    out += key;
    out.append(width - key.size() + 2, ' ');
    out += value;
    out += '\n';
  }
  return out;
}

std::string format_tsv(const EvalReport& report) {
  std::string out;
  out += "task\t" + std::string(to_string(report.task)) + "\n";
  out += "dataset\t" + report.dataset + "\n";
  out += "retrieval\t" + std::string(to_string(report.retrieval)) + "\n";
  out += "resolved\t" + std::to_string(report.resolved) + "\n";
  out += "total\t" + std::to_string(report.total) + "\n";
  for (const auto& [key, value] : report.metrics) out += key + "\t" + format_real(value) + "\n";
  return out;
}

namespace {

RetrievalIndex make_index(const EmbeddingSpace& candidates, const EmbeddingSpace* sources,
                          const RetrievalSettings& settings) {
  if (settings.mode == RetrievalMode::cosine) return RetrievalIndex::cosine_only(candidates);
  if (sources) return RetrievalIndex(candidates, *sources, settings.csls_k);
  return RetrievalIndex(candidates, settings.csls_k);
}

}  // namespace

EvalReport eval_bli(const AlignedPair& aligned, const BilingualLexicon& test, const RetrievalSettings& retrieval,
                    std::span<const std::size_t> ks, std::string dataset) {
  check_aligned(aligned);
  if (ks.empty()) throw Error("at least one k is required");
  for (auto k : ks) {
    if (k == 0) throw Error("k must be at least 1");
  }

  // Group gold targets by source token, in first-appearance order.
  std::vector<std::string> sources;
  std::unordered_map<std::string, std::vector<std::string>> golds;
  for (const auto& p : test.pairs()) {
    auto [it, inserted] = golds.try_emplace(p.source);
    if (inserted) sources.push_back(p.source);
    it->second.push_back(p.target);
  }

  std::vector<std::size_t> query_rows;
  std::vector<std::vector<std::size_t>> gold_rows;
  for (const auto& s : sources) {
    auto si = aligned.source.find(s);
    if (!si) continue;
    std::vector<std::size_t> g;
    for (const auto& t : golds[s]) {
      if (auto ti = aligned.target.find(t)) g.push_back(*ti);
    }
    if (g.empty()) continue;
    query_rows.push_back(*si);
    gold_rows.push_back(std::move(g));
  }
  if (query_rows.empty()) throw Error("no test query resolves in the aligned spaces");

  const RetrievalIndex index = make_index(aligned.target, &aligned.source, retrieval);
  Matrix queries(static_cast<Eigen::Index>(query_rows.size()), static_cast<Eigen::Index>(aligned.source.dim()));
  for (std::size_t i = 0; i < query_rows.size(); ++i) {
    queries.row(static_cast<Eigen::Index>(i)) = aligned.source.matrix().row(static_cast<Eigen::Index>(query_rows[i]));
  }
  const std::size_t max_k = *std::max_element(ks.begin(), ks.end());
  const auto ranked = knn_batch(index, queries, max_k, retrieval.mode);

  EvalReport report;
  report.task = Task::bli;
  report.dataset = std::move(dataset);
  report.retrieval = retrieval.mode;
  report.resolved = query_rows.size();
  report.total = sources.size();
  for (auto k : ks) {
    std::size_t hits = 0;
    for (std::size_t q = 0; q < ranked.size(); ++q) {
      const auto& list = ranked[q];
      const std::size_t depth = std::min(k, list.size());
      for (std::size_t r = 0; r < depth; ++r) {
        const auto& g = gold_rows[q];
        if (std::find(g.begin(), g.end(), list[r].index) != g.end()) {
          ++hits;
          break;
        }
      }
    }
    report.metrics.emplace_back("P@" + std::to_string(k),
                                static_cast<double>(hits) / static_cast<double>(ranked.size()));
  }
  return report;
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error("correlation series differ in length");
  if (x.size() < 2) throw Error("correlation needs at least two points");
  const auto n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw Error("correlation undefined for a constant series");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::vector<double> average_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    const double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = rank;
    i = j + 1;
  }
  return ranks;
}

double spearman(std::span<const double> x, std::span<const double> y) {
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  return pearson(rx, ry);
}

namespace {

bool constant(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
}

}  // namespace

EvalReport eval_similarity(const EmbeddingSpace& space_a, const EmbeddingSpace& space_b,
                           const SimilarityDataset& dataset, std::string name) {
  std::vector<double> gold;
  std::vector<double> predicted;
  for (const auto& t : dataset.triples) {
    auto a = space_a.lookup(t.first);
    auto b = space_b.lookup(t.second);
    if (!a || !b) continue;
    if (a->size() != b->size()) throw Error("similarity spaces differ in dimension");
    const double denom = a->norm() * b->norm();
    if (denom == 0.0) throw Error("zero vector in similarity pair " + t.first + " / " + t.second);
    predicted.push_back(a->dot(*b) / denom);
    gold.push_back(t.gold);
  }
  if (gold.size() < 2) {
    throw Error("similarity needs at least 2 resolvable pairs, found " + std::to_string(gold.size()));
  }
  if (constant(gold)) throw Error("gold similarity scores have zero variance");
  if (constant(predicted)) throw Error("predicted similarity scores have zero variance");

  EvalReport report;
  report.task = Task::similarity;
  report.dataset = std::move(name);
  report.retrieval = RetrievalMode::cosine;
  report.resolved = gold.size();
  report.total = dataset.triples.size();
  report.metrics.emplace_back("pearson", pearson(predicted, gold));
  report.metrics.emplace_back("spearman", spearman(predicted, gold));
  return report;
}

namespace {

void append_hypernym_rows(const EmbeddingSpace& space, const HypernymDataset& train, std::vector<RowVector>& inputs,
                          std::vector<RowVector>& targets) {
  for (const auto& e : train.entries) {
    auto q = space.lookup(e.query);
    if (!q) continue;
    for (const auto& h : e.hypernyms) {
      if (auto g = space.lookup(h)) {
        inputs.push_back(*q);
        targets.push_back(std::move(*g));
      }
    }
  }
}

PairedData stack_rows(const std::vector<RowVector>& inputs, const std::vector<RowVector>& targets) {
  if (inputs.empty()) throw Error("no resolvable hypernym training pairs");
  const auto n = static_cast<Eigen::Index>(inputs.size());
  Matrix a(n, inputs.front().size());
  Matrix b(n, targets.front().size());
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& in = inputs[static_cast<std::size_t>(i)];
    const auto& out = targets[static_cast<std::size_t>(i)];
    if (in.size() != a.cols() || out.size() != b.cols()) throw Error("hypernym training spaces differ in dimension");
    a.row(i) = in;
    b.row(i) = out;
  }
  return PairedData(std::move(a), std::move(b));
}

}  // namespace

PairedData hypernym_training_rows(const EmbeddingSpace& space, const HypernymDataset& train) {
  std::vector<RowVector> inputs, targets;
  append_hypernym_rows(space, train, inputs, targets);
  return stack_rows(inputs, targets);
}

LinearMap fit_hypernym_projection(const EmbeddingSpace& space, const HypernymDataset& train) {
  return fit_least_squares(hypernym_training_rows(space, train));
}

LinearMap fit_hypernym_projection(std::span<const HypernymTrainingSource> sources) {
  std::vector<RowVector> inputs, targets;
  for (const auto& s : sources) append_hypernym_rows(*s.space, *s.data, inputs, targets);
  return fit_least_squares(stack_rows(inputs, targets));
}

RankingScores score_ranking(std::span<const std::string> ranked, const std::set<std::string>& gold,
                            std::size_t k) {
  if (gold.empty()) throw Error("gold set is empty");
  if (k == 0) throw Error("k must be at least 1");
  RankingScores s;
  const std::size_t depth = std::min(k, ranked.size());
  std::size_t hits = 0;
  std::size_t hits_at_5 = 0;
  double precision_sum = 0.0;
  for (std::size_t i = 0; i < depth; ++i) {
    if (!gold.count(ranked[i])) continue;
    ++hits;
    const double position = static_cast<double>(i + 1);
    if (hits == 1) s.reciprocal_rank = 1.0 / position;
    precision_sum += static_cast<double>(hits) / position;
    if (i < 5) ++hits_at_5;
  }
  s.average_precision = precision_sum / static_cast<double>(std::min(gold.size(), k));
  s.precision_at_5 = static_cast<double>(hits_at_5) / static_cast<double>(std::min<std::size_t>(gold.size(), 5));
  return s;
}

EvalReport eval_hypernyms(const EmbeddingSpace& query_space, const EmbeddingSpace& candidate_space,
                          const LinearMap& projection, const HypernymDataset& test, const HypernymSettings& settings,
                          std::string name) {
  if (settings.k == 0) throw Error("k must be at least 1");
  if (projection.input_dim() != query_space.dim() || projection.output_dim() != candidate_space.dim()) {
    throw Error("hypernym projection dimensions do not match the spaces");
  }

  std::vector<std::size_t> queries;
  for (std::size_t i = 0; i < test.entries.size(); ++i) {
    if (query_space.find(test.entries[i].query)) queries.push_back(i);
  }
  if (queries.empty()) throw Error("no hypernym test query resolves in the query space");

  Matrix projected(static_cast<Eigen::Index>(queries.size()), static_cast<Eigen::Index>(candidate_space.dim()));
  for (std::size_t i = 0; i < queries.size(); ++i) {
    const auto row = *query_space.find(test.entries[queries[i]].query);
    projected.row(static_cast<Eigen::Index>(i)) =
        query_space.matrix().row(static_cast<Eigen::Index>(row)) * projection.matrix();
  }

  const RetrievalIndex index = make_index(candidate_space, nullptr, settings.retrieval);
  // One extra candidate covers the query token, which is dropped below.
  const auto ranked = knn_batch(index, projected, settings.k + 1, settings.retrieval.mode);

  double mrr = 0.0, map = 0.0, p5 = 0.0;
  for (std::size_t i = 0; i < queries.size(); ++i) {
    const auto& entry = test.entries[queries[i]];
    const auto self = candidate_space.find(entry.query);
    std::vector<std::string> candidates;
    for (const auto& n : ranked[i]) {
      if (self && n.index == *self) continue;
      if (candidates.size() == settings.k) break;
      candidates.push_back(candidate_space.token(n.index));
    }
    std::set<std::string> gold;
    for (const auto& h : entry.hypernyms) {
      auto g = candidate_space.find(h);
      gold.insert(g ? candidate_space.token(*g) : h);
    }
    const auto s = score_ranking(candidates, gold, settings.k);
    mrr += s.reciprocal_rank;
    map += s.average_precision;
    p5 += s.precision_at_5;
  }

  const auto n = static_cast<double>(queries.size());
  EvalReport report;
  report.task = Task::hypernym;
  report.dataset = std::move(name);
  report.retrieval = settings.retrieval.mode;
  report.resolved = queries.size();
  report.total = test.entries.size();
  report.metrics.emplace_back("MRR", mrr / n);
  report.metrics.emplace_back("MAP", map / n);
  report.metrics.emplace_back("P@5", p5 / n);
  return report;
}

}  // namespace meemi
