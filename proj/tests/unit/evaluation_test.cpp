#include "meemi/evaluation.hpp"
#include "meemi/fixtures.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace meemi;

namespace {

AlignedPair unmapped(EmbeddingSpace s, EmbeddingSpace t) {
  const std::size_t d = s.dim();
  return AlignedPair{std::move(s), std::move(t), LinearMap::identity(d), 0};
}

// Planar unit vectors at the given angles (degrees).
EmbeddingSpace on_circle(std::vector<std::string> vocab, std::vector<double> degrees) {
  Matrix m(degrees.size(), 2);
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    m(i, 0) = std::cos(degrees[i] * M_PI / 180.0);
    m(i, 1) = std::sin(degrees[i] * M_PI / 180.0);
  }
  return EmbeddingSpace(std::move(vocab), m);
}

}  // namespace

TEST(EvalBli, PerfectAlignment) {
  const auto pair = make_rotated_pair({.vocab_size = 300, .dim = 20, .seed = 1});
  const auto aligned = unmapped(apply_map(pair.rotation, pair.source), pair.target);
  const std::vector<std::size_t> ks{1, 5, 10};
  for (auto mode : {RetrievalMode::cosine, RetrievalMode::csls}) {
    const auto report = eval_bli(aligned, pair.gold, {mode, 10}, ks);
    EXPECT_EQ(report.metric("P@1"), 1.0);
    EXPECT_EQ(report.metric("P@5"), 1.0);
    EXPECT_EQ(report.metric("P@10"), 1.0);
    EXPECT_EQ(report.resolved, 300u);
  }
}

TEST(EvalBli, HandComputedRanks) {
  // Query q1 sits on t1 (rank 1); q2's gold t4 is the third closest.
  const auto src = on_circle({"q1", "q2"}, {0, 90});
  const auto tgt = on_circle({"t1", "t2", "t3", "t4"}, {0, 88, 95, 80});
  const std::vector<std::size_t> ks{1, 5};
  const auto report = eval_bli(unmapped(src, tgt), BilingualLexicon({{"q1", "t1"}, {"q2", "t4"}}), {}, ks);
  EXPECT_DOUBLE_EQ(report.metric("P@1"), 0.5);
  EXPECT_DOUBLE_EQ(report.metric("P@5"), 1.0);
}

TEST(EvalBli, GoldSetsOovAndErrors) {
  const auto src = on_circle({"q1", "q2", "q3"}, {0, 90, 180});
  const auto tgt = on_circle({"t1", "t2"}, {85, 0});
  const std::vector<std::size_t> ks{1};
  const auto report = eval_bli(unmapped(src, tgt),
                               BilingualLexicon({{"q1", "t1"}, {"q1", "t2"}, {"q2", "gone"}, {"zz", "t1"}, {"q3", "t2"}}),
                               {}, ks);
  EXPECT_EQ(report.total, 4u);
  EXPECT_EQ(report.resolved, 2u);
  EXPECT_DOUBLE_EQ(report.metric("P@1"), 0.5);
  EXPECT_THROW(eval_bli(unmapped(src, tgt), BilingualLexicon(std::vector<TranslationPair>{{"zz", "t1"}}), {}, ks), Error);
  EXPECT_THROW(report.metric("P@3"), Error);
}

TEST(EvalBli, MatchesFullRankingOracle) {
  std::mt19937_64 rng(2);
  const auto pair = make_rotated_pair({.vocab_size = 400, .dim = 10, .noise_sigma = 0.6, .seed = 2});
  const auto aligned = unmapped(apply_map(pair.rotation, pair.source), pair.target);
  const std::vector<std::size_t> ks{1, 3, 10, 50};
  const auto report = eval_bli(aligned, pair.gold, {}, ks);
  for (std::size_t k : ks) {
    std::size_t hits = 0;
    for (std::size_t i = 0; i < 400; ++i) {
      const Matrix q = aligned.source.matrix().row(i);
      const auto ranked = oracle::knn_cosine(aligned.target.matrix(), q, k);
      hits += std::find(ranked.begin(), ranked.end(), i) != ranked.end();
    }
    EXPECT_DOUBLE_EQ(report.metric("P@" + std::to_string(k)), hits / 400.0);
  }
}

TEST(EvalBli, MonotoneInKAndScaleInvariant) {
  const auto pair = make_rotated_pair({.vocab_size = 300, .dim = 10, .noise_sigma = 0.8, .seed = 3});
  const auto aligned = unmapped(apply_map(pair.rotation, pair.source), pair.target);
  const std::vector<std::size_t> ks{1, 2, 5, 10, 20, 50};
  const auto report = eval_bli(aligned, pair.gold, {}, ks);
  for (std::size_t i = 1; i < ks.size(); ++i)
    EXPECT_LE(report.metrics[i - 1].second, report.metrics[i].second);

  const auto scaled = unmapped(EmbeddingSpace(aligned.source.vocab(), 3.0 * aligned.source.matrix()),
                               EmbeddingSpace(aligned.target.vocab(), 0.5 * aligned.target.matrix()));
  const auto again = eval_bli(scaled, pair.gold, {}, ks);
  for (std::size_t i = 0; i < ks.size(); ++i) EXPECT_EQ(report.metrics[i].second, again.metrics[i].second);
}

TEST(Correlation, AgainstOracles) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> n;
  for (int t = 0; t < 10; ++t) {
    std::vector<double> x(50), y(50);
    for (std::size_t i = 0; i < 50; ++i) {
      x[i] = n(rng);
      y[i] = 0.5 * x[i] + n(rng);
    }
    EXPECT_NEAR(pearson(x, y), oracle::pearson(x, y), 1e-10);
    EXPECT_NEAR(spearman(x, y), oracle::spearman(x, y), 1e-10);

    std::vector<double> cubed(x);
    for (auto& v : cubed) v = v * v * v;
    EXPECT_NEAR(spearman(cubed, y), spearman(x, y), 1e-12);
  }
}

TEST(Correlation, TiesGetAverageRanks) {
  const std::vector<double> v{3, 1, 3, 2};
  EXPECT_EQ(average_ranks(v), (std::vector<double>{3.5, 1, 3.5, 2}));
  EXPECT_EQ(average_ranks(v), oracle::ranks(v));
}

TEST(EvalSimilarity, PerfectAndInverted) {
  const auto space = on_circle({"a", "b", "c", "d"}, {0, 30, 60, 100});
  const SimilarityDataset up{{{"a", "b", 3}, {"a", "c", 2}, {"a", "d", 1}, {"b", "c", 3}}};
  const auto report = eval_similarity(space, space, up);
  // Cosines are cos 30, cos 60, cos 100, cos 30: perfectly rank-correlated.
  EXPECT_NEAR(report.metric("spearman"), 1.0, 1e-12);

  SimilarityDataset exact, inverted;
  for (const auto& t : up.triples) {
    const double c = oracle::cosine(space.matrix(), *space.find(t.first), space.matrix(), *space.find(t.second));
    exact.triples.push_back({t.first, t.second, c});
    inverted.triples.push_back({t.first, t.second, -c});
  }
  EXPECT_NEAR(eval_similarity(space, space, exact).metric("pearson"), 1.0, 1e-12);
  EXPECT_NEAR(eval_similarity(space, space, inverted).metric("pearson"), -1.0, 1e-12);
  EXPECT_NEAR(eval_similarity(space, space, inverted).metric("spearman"), -1.0, 1e-12);
}

TEST(EvalSimilarity, SkipsOovAndRejectsDegenerateInput) {
  const auto space = on_circle({"a", "b", "c"}, {0, 30, 80});
  const SimilarityDataset data{{{"a", "b", 1}, {"a", "c", 0}, {"a", "zz", 5}}};
  const auto report = eval_similarity(space, space, data);
  EXPECT_EQ(report.resolved, 2u);
  EXPECT_EQ(report.total, 3u);

  EXPECT_THROW(eval_similarity(space, space, SimilarityDataset{{{"a", "b", 1}, {"a", "zz", 2}}}), Error);
  EXPECT_THROW(eval_similarity(space, space, SimilarityDataset{{{"a", "b", 1}, {"a", "c", 1}}}), Error);
  EXPECT_THROW(eval_similarity(space, space, SimilarityDataset{{{"a", "b", 1}, {"b", "a", 2}}}), Error);
}

TEST(EvalSimilarity, CrossLingualUsesBothSpaces) {
  const auto en = on_circle({"car", "dog", "sun"}, {0, 40, 90});
  const auto es = on_circle({"coche", "perro", "sol"}, {5, 35, 95});
  const SimilarityDataset data{{{"car", "coche", 10}, {"dog", "coche", 5}, {"sun", "coche", 1}}};
  EXPECT_NEAR(eval_similarity(en, es, data).metric("spearman"), 1.0, 1e-12);
}

TEST(ScoreRanking, WorkedCases) {
  const std::vector<std::string> first_hit{"animal", "x", "y"};
  auto s = score_ranking(first_hit, {"animal"}, 15);
  EXPECT_DOUBLE_EQ(s.reciprocal_rank, 1.0);

  const std::vector<std::string> second{"x", "animal", "y"};
  s = score_ranking(second, {"animal"}, 15);
  EXPECT_DOUBLE_EQ(s.reciprocal_rank, 0.5);
  EXPECT_DOUBLE_EQ(s.average_precision, 0.5);
  EXPECT_DOUBLE_EQ(s.precision_at_5, 1.0);

  const std::vector<std::string> miss{"x", "y"};
  s = score_ranking(miss, {"animal"}, 15);
  EXPECT_EQ(s.reciprocal_rank, 0.0);
  EXPECT_EQ(s.average_precision, 0.0);
  EXPECT_EQ(s.precision_at_5, 0.0);
}

TEST(ScoreRanking, SeveralGoldsAndTruncation) {
  const std::vector<std::string> ranked{"a", "x", "b", "y", "z", "c"};
  const auto s = score_ranking(ranked, {"a", "b", "c"}, 15);
  EXPECT_DOUBLE_EQ(s.reciprocal_rank, 1.0);
  EXPECT_DOUBLE_EQ(s.average_precision, (1.0 + 2.0 / 3 + 3.0 / 6) / 3);
  EXPECT_DOUBLE_EQ(s.precision_at_5, 2.0 / 3);

  const auto short_list = score_ranking(std::vector<std::string>{"x", "a"}, {"a", "b", "c"}, 2);
  EXPECT_DOUBLE_EQ(short_list.average_precision, 0.5 / 2);
}

TEST(ScoreRanking, AveragePrecisionCanExceedReciprocalRank) {
  // Hits at ranks 2 and 3 with two golds: RR = 1/2, AP = (1/2 + 2/3) / 2.
  const std::vector<std::string> ranked{"x", "a", "b"};
  const auto s = score_ranking(ranked, {"a", "b"}, 15);
  EXPECT_DOUBLE_EQ(s.reciprocal_rank, 0.5);
  EXPECT_GT(s.average_precision, s.reciprocal_rank);
}

TEST(HypernymProjection, IdentityAndErrors) {
  const auto pair = make_rotated_pair({.vocab_size = 60, .dim = 8, .seed = 5});
  HypernymDataset self;
  for (const auto& t : pair.source.vocab()) self.entries.push_back({t, {t}});
  EXPECT_LE((fit_hypernym_projection(pair.source, self).matrix() - Matrix::Identity(8, 8)).cwiseAbs().maxCoeff(), 1e-8);
  EXPECT_THROW(fit_hypernym_projection(pair.source, HypernymDataset{{{"no", {"pe"}}}}), Error);
}

TEST(HypernymProjection, RecoversTaxonomyMap) {
  const auto tax = make_taxonomy({.vocab_size = 500, .dim = 50, .seed = 6});
  const auto projection = fit_hypernym_projection(tax.space, tax.train);
  EXPECT_LE((projection.matrix() - tax.true_map.matrix()).cwiseAbs().maxCoeff(), 1e-6);
  const auto report = eval_hypernyms(tax.space, tax.space, projection, tax.test);
  EXPECT_DOUBLE_EQ(report.metric("MRR"), 1.0);
  EXPECT_DOUBLE_EQ(report.metric("MAP"), 1.0);
  EXPECT_DOUBLE_EQ(report.metric("P@5"), 1.0);
}

TEST(HypernymProjection, StackedSources) {
  const auto tax = make_taxonomy({.vocab_size = 200, .dim = 10, .seed = 7});
  const std::vector<HypernymTrainingSource> sources{{&tax.space, &tax.train}, {&tax.space, &tax.test}};
  const auto rows = hypernym_training_rows(tax.space, tax.train).rows() + hypernym_training_rows(tax.space, tax.test).rows();
  EXPECT_EQ(rows, 100u);
  EXPECT_LE((fit_hypernym_projection(sources).matrix() - tax.true_map.matrix()).cwiseAbs().maxCoeff(), 1e-6);
}

TEST(EvalHypernyms, QueryExcludedFromCandidates) {
  // Identity projection: without the exclusion every query would retrieve itself.
  const auto space = on_circle({"cat", "animal", "rock"}, {0, 20, 120});
  const auto report = eval_hypernyms(space, space, LinearMap::identity(2), HypernymDataset{{{"cat", {"animal"}}}});
  EXPECT_DOUBLE_EQ(report.metric("MRR"), 1.0);
}

TEST(EvalHypernyms, RankTwoWorkedCase) {
  const auto space = on_circle({"cat", "pet", "animal", "rock"}, {0, 10, 20, 120});
  const HypernymSettings settings{.k = 15};
  const auto report = eval_hypernyms(space, space, LinearMap::identity(2), HypernymDataset{{{"cat", {"animal"}}}}, settings);
  EXPECT_DOUBLE_EQ(report.metric("MRR"), 0.5);
  EXPECT_DOUBLE_EQ(report.metric("MAP"), 0.5);
  EXPECT_DOUBLE_EQ(report.metric("P@5"), 1.0);
  EXPECT_THROW(eval_hypernyms(space, space, LinearMap::identity(2), HypernymDataset{{{"zz", {"animal"}}}}), Error);
}

TEST(Reports, Formats) {
  EvalReport r;
  r.task = Task::bli;
  r.dataset = "test.dict";
  r.metrics = {{"P@1", 0.5}, {"P@5", 1.0}};
  r.resolved = 2;
  r.total = 3;
  const auto tsv = format_tsv(r);
  EXPECT_NE(tsv.find("task\tbli\n"), std::string::npos);
  EXPECT_NE(tsv.find("P@1\t0.5\n"), std::string::npos);
  const auto text = format_text(r);
  EXPECT_NE(text.find("0.5000"), std::string::npos);
  EXPECT_EQ(to_string(Task::hypernym), "hypernym");
}
