#include "meemi/common.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

using namespace meemi;

TEST(FormatReal, RoundTripsExactly) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> n(0.0, 100.0);
  for (int i = 0; i < 1000; ++i) {
    const double v = n(rng);
    EXPECT_EQ(*parse_real(format_real(v)), v);
  }
  EXPECT_EQ(format_real(0.5), "0.5");
  EXPECT_EQ(format_real(-2.0), "-2");
}

TEST(ParseReal, RejectsGarbage) {
  EXPECT_FALSE(parse_real("1.5x"));
  EXPECT_FALSE(parse_real(""));
  EXPECT_FALSE(parse_real("high"));
  EXPECT_DOUBLE_EQ(*parse_real("+2.5"), 2.5);
  EXPECT_DOUBLE_EQ(*parse_real("1e-3"), 1e-3);
}

TEST(Split, WhitespaceAndTabs) {
  const auto ws = split_whitespace("  cat \t1  2\t");
  ASSERT_EQ(ws.size(), 3u);
  EXPECT_EQ(ws[0], "cat");
  EXPECT_EQ(ws[2], "2");

  const auto tabs = split_tabs("cat\tbig animal\t\tfeline ");
  ASSERT_EQ(tabs.size(), 3u);
  EXPECT_EQ(tabs[1], "big animal");
  EXPECT_EQ(tabs[2], "feline");
}

TEST(FoldLower, AsciiOnly) {
  EXPECT_EQ(fold_lower("CaT"), "cat");
  EXPECT_EQ(fold_lower("\xC3\x89t\xC3\xA9"), "\xC3\x89t\xC3\xA9");
}

TEST(Lines, CommentsBlanksAndCr) {
  EXPECT_TRUE(is_comment_or_blank(""));
  EXPECT_TRUE(is_comment_or_blank("   "));
  EXPECT_TRUE(is_comment_or_blank("# w1 w2 score"));
  EXPECT_FALSE(is_comment_or_blank("cat dog"));
  EXPECT_EQ(strip_cr("abc\r"), "abc");
  EXPECT_EQ(strip_cr("abc"), "abc");
}

TEST(ParseErrorTest, CarriesLine) {
  const ParseError e("f.vec", 7, "bad row");
  EXPECT_EQ(e.line(), 7u);
  EXPECT_NE(std::string(e.what()).find("7"), std::string::npos);
}
