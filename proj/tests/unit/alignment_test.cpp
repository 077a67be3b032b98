#include "meemi/alignment.hpp"
#include "meemi/evaluation.hpp"
#include "meemi/fixtures.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace meemi;

namespace {

BilingualLexicon first_pairs(const BilingualLexicon& gold, std::size_t begin, std::size_t end) {
  BilingualLexicon out;
  for (std::size_t i = begin; i < end; ++i) out.add(gold.pairs()[i]);
  return out;
}

}  // namespace

TEST(Normalization, ParseAndFormat) {
  EXPECT_EQ(parse_normalization("unit,center,unit"),
            (std::vector<NormalizationStep>{NormalizationStep::unit, NormalizationStep::center, NormalizationStep::unit}));
  EXPECT_TRUE(parse_normalization("none").empty());
  EXPECT_TRUE(parse_normalization("").empty());
  EXPECT_THROW(parse_normalization("unit,scale"), Error);
  const auto steps = parse_normalization("center, unit");
  EXPECT_EQ(format_normalization(steps), "center,unit");
  EXPECT_EQ(format_normalization({}), "none");
}

TEST(AlignmentConfigTest, Validation) {
  AlignmentConfig c;
  EXPECT_NO_THROW(c.validate());
  c.max_iterations = 0;
  EXPECT_THROW(c.validate(), Error);
  c = {};
  c.convergence_tol = 0.0;
  EXPECT_THROW(c.validate(), Error);
}

TEST(AlignSupervised, RecoversSharedVocabRotation) {
  const auto pair = make_rotated_pair({.vocab_size = 500, .dim = 20, .seed = 1, .shared_vocab = true});
  const auto lex = first_pairs(pair.gold, 0, 100);
  const auto aligned = align_supervised(pair.source, pair.target, lex);
  EXPECT_TRUE(aligned.map.orthogonal());
  EXPECT_EQ(aligned.iterations_run, 1u);
  for (std::size_t i = 0; i < 100; ++i)
    EXPECT_LE((aligned.source.matrix().row(i) - aligned.target.matrix().row(i)).cwiseAbs().maxCoeff(), 1e-6);
}

TEST(AlignSupervised, TargetOnlyNormalized) {
  const auto pair = make_rotated_pair({.vocab_size = 300, .dim = 10, .noise_sigma = 0.2, .seed = 2});
  const AlignmentConfig config;
  const auto aligned = align_supervised(pair.source, pair.target, first_pairs(pair.gold, 0, 50), config);
  const auto expected = apply_normalization(pair.target, config.normalize);
  EXPECT_EQ(aligned.target.matrix(), expected.matrix());
  EXPECT_EQ(aligned.target.vocab(), pair.target.vocab());
}

TEST(AlignSupervised, PreservesMonolingualCosines) {
  const auto pair = make_rotated_pair({.vocab_size = 200, .dim = 12, .noise_sigma = 0.3, .seed = 3});
  const AlignmentConfig config;
  const auto aligned = align_supervised(pair.source, pair.target, first_pairs(pair.gold, 0, 40), config);
  const Matrix before = apply_normalization(pair.source, config.normalize).matrix();
  const Matrix& after = aligned.source.matrix();
  for (std::size_t i = 0; i < 60; ++i)
    for (std::size_t j = i + 1; j < 60; ++j)
      EXPECT_NEAR(oracle::cosine(before, i, before, j), oracle::cosine(after, i, after, j), 1e-9);
}

TEST(AlignSupervised, SinglePairLexicon) {
  const auto pair = make_rotated_pair({.vocab_size = 50, .dim = 300, .noise_sigma = 0.5, .seed = 4});
  const AlignmentConfig config;
  const auto aligned = align_supervised(pair.source, pair.target, first_pairs(pair.gold, 0, 1), config);
  const Matrix src = apply_normalization(pair.source, config.normalize).matrix();
  const Matrix& tgt = aligned.target.matrix();
  EXPECT_GE(oracle::cosine(aligned.source.matrix(), 0, tgt, 0), oracle::cosine(src, 0, tgt, 0));
}

TEST(AlignSupervised, Errors) {
  const auto a = make_rotated_pair({.vocab_size = 50, .dim = 30, .seed = 5});
  const auto b = make_rotated_pair({.vocab_size = 50, .dim = 20, .seed = 5});
  EXPECT_THROW(align_supervised(a.source, b.target, a.gold), Error);
  EXPECT_THROW(align_supervised(a.source, a.target, BilingualLexicon(std::vector<TranslationPair>{{"zz", "yy"}})), Error);
}

TEST(InduceDictionary, PerfectAlignmentAndCaps) {
  const auto pair = make_rotated_pair({.vocab_size = 200, .dim = 16, .seed = 6});
  const auto aligned = align_supervised(pair.source, pair.target, pair.gold);
  const auto induced = induce_dictionary(aligned, 20000);
  EXPECT_EQ(induced.pairs(), pair.gold.pairs());
  EXPECT_EQ(induce_dictionary(aligned, 1).size(), 1u);

  const auto capped = induce_nearest(aligned.source, aligned.target, 30);
  EXPECT_EQ(capped.lexicon.size(), 30u);
  for (const auto& r : capped.rows) EXPECT_LT(r.target, 30u);
  EXPECT_NEAR(capped.mean_cosine, 1.0, 1e-9);
}

TEST(SelfLearning, OneIterationEqualsPlainAlignment) {
  const auto pair = make_rotated_pair({.vocab_size = 400, .dim = 20, .noise_sigma = 0.3, .seed = 7});
  const auto seed = first_pairs(pair.gold, 0, 30);
  AlignmentConfig config;
  const auto plain = align_supervised(pair.source, pair.target, seed, config);
  config.self_learning = true;
  config.max_iterations = 1;
  const auto once = align_supervised(pair.source, pair.target, seed, config);
  EXPECT_EQ(once.iterations_run, 1u);
  EXPECT_EQ(once.map.matrix(), plain.map.matrix());
  EXPECT_EQ(once.source.matrix(), plain.source.matrix());
}

TEST(SelfLearning, FullGoldSeedConvergesQuickly) {
  const auto pair = make_rotated_pair({.vocab_size = 300, .dim = 20, .seed = 8});
  AlignmentConfig config;
  config.self_learning = true;
  const auto result = align_supervised(pair.source, pair.target, pair.gold, config);
  EXPECT_LE(result.iterations_run, 2u);
}

TEST(SelfLearning, SmallSeedDoesNotHurtHeldOutPrecision) {
  const auto pair = make_rotated_pair({.vocab_size = 1000, .dim = 50, .noise_sigma = 0.5, .seed = 42});
  const auto seed = first_pairs(pair.gold, 0, 25);
  const auto test = first_pairs(pair.gold, 500, 1000);
  const std::vector<std::size_t> ks{1};

  AlignmentConfig config;
  const double plain = eval_bli(align_supervised(pair.source, pair.target, seed, config), test, {}, ks).metric("P@1");
  config.self_learning = true;
  const auto learned = align_supervised(pair.source, pair.target, seed, config);
  const double self = eval_bli(learned, test, {}, ks).metric("P@1");
  EXPECT_GT(learned.iterations_run, 1u);
  EXPECT_GE(self, plain);
}

TEST(SelfLearning, IterateEntryPointMatchesConfigFlag) {
  const auto pair = make_rotated_pair({.vocab_size = 300, .dim = 20, .noise_sigma = 0.3, .seed = 9});
  const auto seed = first_pairs(pair.gold, 0, 25);
  AlignmentConfig config;
  config.self_learning = true;
  const auto a = align_supervised(pair.source, pair.target, seed, config);
  const auto b = iterate_self_learning(pair.source, pair.target, seed, config);
  EXPECT_EQ(a.map.matrix(), b.map.matrix());
  EXPECT_EQ(a.iterations_run, b.iterations_run);
}
