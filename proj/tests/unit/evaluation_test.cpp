#include <random>

#include <gtest/gtest.h>

#include "delsumm/evaluation.hpp"
#include "delsumm/summarizer.hpp"

using namespace delsumm;
using R = RhetoricalRole;

namespace {

using Tokens = std::vector<std::string>;

void expect_score(const RougeScore& s, double r, double p, double f) {
  EXPECT_NEAR(s.recall, r, 1e-12);
  EXPECT_NEAR(s.precision, p, 1e-12);
  EXPECT_NEAR(s.f, f, 1e-12);
}

TextSummary plain(const std::string& text) { return {"d", {{std::nullopt, text}}}; }

}  // namespace

TEST(RougeN, Identity) {
  const Tokens t = {"a", "b", "c", "d"};
  expect_score(rouge_n(t, t, 2), 1, 1, 1);
  expect_score(rouge_n(t, t, 1), 1, 1, 1);
}

TEST(RougeN, HandCountedBigrams) {
  expect_score(rouge_n(Tokens{"a", "b", "c"}, Tokens{"a", "b", "d"}, 2), 0.5, 0.5, 0.5);
}

TEST(RougeN, ClipsRepeatedGrams) {
  // candidate "a a a a", reference "a a": unigram overlap clipped to 2
  expect_score(rouge_n(Tokens{"a", "a", "a", "a"}, Tokens{"a", "a"}, 1), 1.0, 0.5, 2.0 / 3.0);
}

TEST(RougeN, EmptyAndShortInputs) {
  expect_score(rouge_n(Tokens{}, Tokens{"a", "b"}, 2), 0, 0, 0);
  expect_score(rouge_n(Tokens{"a", "b"}, Tokens{}, 2), 0, 0, 0);
  expect_score(rouge_n(Tokens{"a"}, Tokens{"a"}, 2), 0, 0, 0);
  EXPECT_THROW(rouge_n(Tokens{"a"}, Tokens{"a"}, 0), std::invalid_argument);
}

TEST(RougeL, HandLcs) {
  expect_score(rouge_l(Tokens{"a", "x", "b"}, Tokens{"a", "b"}), 1.0, 2.0 / 3.0, 0.8);
  expect_score(rouge_l(Tokens{"p", "q"}, Tokens{"p", "q"}), 1, 1, 1);
  expect_score(rouge_l(Tokens{"p", "q"}, Tokens{"r", "s"}), 0, 0, 0);
  expect_score(rouge_l(Tokens{}, Tokens{}), 0, 0, 0);
}

TEST(RougeL, LcsMatchesFullTable) {
  std::mt19937_64 gen(12);
  for (int trial = 0; trial < 200; ++trial) {
    Tokens a(gen() % 15);
    Tokens b(gen() % 15);
    for (auto& t : a) t = std::string(1, static_cast<char>('a' + gen() % 4));
    for (auto& t : b) t = std::string(1, static_cast<char>('a' + gen() % 4));
    std::vector<std::vector<std::size_t>> dp(a.size() + 1, std::vector<std::size_t>(b.size() + 1, 0));
    for (std::size_t i = 1; i <= a.size(); ++i)
      for (std::size_t j = 1; j <= b.size(); ++j)
        dp[i][j] = a[i - 1] == b[j - 1] ? dp[i - 1][j - 1] + 1 : std::max(dp[i - 1][j], dp[i][j - 1]);
    EXPECT_EQ(lcs_length(a, b), dp[a.size()][b.size()]);
    EXPECT_EQ(lcs_length(b, a), dp[a.size()][b.size()]);
  }
}

TEST(Evaluate, IdentityScoresOne) {
  const auto ref = plain("The appellant was convicted under Section 302.");
  const auto s = evaluate(ref, {ref}, {"the", "was", "under"});
  expect_score(s.rouge2, 1, 1, 1);
  expect_score(s.rouge_l, 1, 1, 1);
}

TEST(Evaluate, StopwordsRemovedBeforeScoring) {
  const auto s = evaluate(plain("the bail of the accused"), {plain("bail accused")}, {"the", "of"});
  expect_score(s.rouge2, 1, 1, 1);
}

TEST(Evaluate, OnlyStopwordsScoresZero) {
  const auto s = evaluate(plain("the of and"), {plain("bail granted")}, {"the", "of", "and"});
  expect_score(s.rouge2, 0, 0, 0);
  expect_score(s.rouge_l, 0, 0, 0);
}

TEST(Evaluate, MeanOverReferences) {
  // vs first reference: LCS 2 of 5 -> recall 0.4; vs second: 3 of 5 -> 0.6
  const auto cand = plain("a b c");
  const auto s = evaluate(cand, {plain("a b x y z"), plain("a b c y z")}, {});
  EXPECT_NEAR(s.rouge_l.recall, 0.5, 1e-12);
  EXPECT_THROW(evaluate(cand, {}, {}), NoReferences);
}

TEST(Segmentwise, MissingSegmentScoresZero) {
  TextSummary cand{"d", {{R::Fact, "facts here"}}};
  TextSummary ref{"d", {{R::Fact, "facts here"}, {R::Issue, "issue text"}}};
  const auto seg = evaluate_segmentwise(cand, ref, {});
  expect_score(seg.at("fact"), 1, 1, 1);
  expect_score(seg.at("issue"), 0, 0, 0);
  EXPECT_FALSE(seg.contains("ratio"));
}

TEST(Segmentwise, EqualsManuallyFilteredScores) {
  TextSummary cand{"d",
                   {{R::Fact, "the accused went to Patna"},
                    {R::Ratio, "the evidence is weak"},
                    {R::Fact, "he was arrested"}}};
  TextSummary ref{"d",
                  {{R::Fact, "accused arrested in Patna"},
                   {R::Ratio, "evidence weak and unreliable"},
                   {R::Fact, "he went home"}}};
  const std::set<std::string> stop = {"the", "he", "was", "in", "to", "is", "and"};
  const auto seg = evaluate_segmentwise(cand, ref, stop, false);
  const auto fact_c = content_tokens("the accused went to Patna he was arrested", stop);
  const auto fact_r = content_tokens("accused arrested in Patna he went home", stop);
  const auto ratio_c = content_tokens("the evidence is weak", stop);
  const auto ratio_r = content_tokens("evidence weak and unreliable", stop);
  const auto f = rouge_l(fact_c, fact_r);
  const auto r = rouge_l(ratio_c, ratio_r);
  EXPECT_DOUBLE_EQ(seg.at("fact").f, f.f);
  EXPECT_DOUBLE_EQ(seg.at("fact").recall, f.recall);
  EXPECT_DOUBLE_EQ(seg.at("ratio").f, r.f);
  EXPECT_DOUBLE_EQ(seg.at("ratio").precision, r.precision);
}

TEST(Segmentwise, MergedPrecedentRatioBucket) {
  TextSummary cand{"d", {{R::Precedent, "x y"}, {R::Ratio, "z"}}};
  TextSummary ref{"d", {{R::Ratio, "x y z"}}};
  const auto seg = evaluate_segmentwise(cand, ref, {}, true);
  ASSERT_TRUE(seg.contains("precedent+ratio"));
  expect_score(seg.at("precedent+ratio"), 1, 1, 1);
}

TEST(Segmentwise, AveragesOnlyReferencesWithBucket) {
  TextSummary cand{"d", {{R::Issue, "q r"}}};
  TextSummary a{"d", {{R::Issue, "q r"}}};
  TextSummary b{"d", {{R::Fact, "other"}}};
  const auto seg = evaluate_segmentwise(cand, std::vector<TextSummary>{a, b}, {});
  expect_score(seg.at("issue"), 1, 1, 1);
  expect_score(seg.at("fact"), 0, 0, 0);
}

TEST(TTest, KnownValue) {
  // differences 1, 2, 3, 4: mean 2.5, sd 1.290994, t = 3.872983, df 3
  const std::vector<double> a = {2, 4, 6, 8};
  const std::vector<double> b = {1, 2, 3, 4};
  const auto r = paired_t_test(a, b);
  EXPECT_NEAR(r.t, 3.872983346207417, 1e-9);
  EXPECT_NEAR(r.p_value, 0.030466, 1e-5);
}

TEST(TTest, ZeroVarianceCases) {
  const std::vector<double> a = {0.3, 0.5, 0.7};
  EXPECT_DOUBLE_EQ(paired_t_test(a, a).p_value, 1.0);
  const std::vector<double> shifted = {0.4, 0.6, 0.8};
  EXPECT_DOUBLE_EQ(paired_t_test(shifted, a).p_value, 0.0);
  const std::vector<double> one = {0.1};
  EXPECT_DOUBLE_EQ(paired_t_test(one, one).p_value, 1.0);
  EXPECT_THROW(paired_t_test(a, one), std::invalid_argument);
}

TEST(Table, AlignsColumns) {
  const auto t = format_table({"method", "R2-R"}, {{"DELSumm", format_score(0.5)}, {"luhn", format_score(0.25)}});
  EXPECT_EQ(t,
            "method     R2-R\n"
            "---------------\n"
            "DELSumm  0.5000\n"
            "luhn     0.2500\n");
}

TEST(MeanRow, AveragesColumns) {
  const auto m = mean_row({{0.2, 0.4, 0.6, 0.8}, {0.4, 0.6, 0.8, 1.0}});
  EXPECT_NEAR(m.rouge2_recall, 0.3, 1e-12);
  EXPECT_NEAR(m.rouge_l_f, 0.9, 1e-12);
}
