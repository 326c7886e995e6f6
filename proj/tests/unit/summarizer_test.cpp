#include <gtest/gtest.h>

#include "delsumm/summarizer.hpp"
#include "delsumm/synthetic.hpp"
#include "support/oracles.hpp"

using namespace delsumm;
using R = RhetoricalRole;

namespace {

TextSummary words(int n) {
  std::string text;
  for (int k = 0; k < n; ++k) text += "w" + std::to_string(k) + " ";
  return {"d", {{std::nullopt, text}}};
}

SummaryRequest request_for(const LabeledDocument& doc, int length) {
  SummaryRequest r;
  r.doc = doc;
  r.profile = india_profile();
  r.target_length = length;
  return r;
}

}  // namespace

TEST(TargetLength, MeanOfReferences) {
  EXPECT_EQ(target_length({words(100), words(120)}), 110);
  EXPECT_EQ(target_length({words(57)}), 57);
  EXPECT_EQ(target_length({words(10), words(11)}), 10);
  EXPECT_THROW(target_length({}), NoReferences);
}

TEST(TargetLength, RequestPrefersOverride) {
  SummaryRequest r;
  r.references = {words(40)};
  EXPECT_EQ(r.resolve_length(), 40);
  r.target_length = 12;
  EXPECT_EQ(r.resolve_length(), 12);
  r.target_length.reset();
  r.references.clear();
  EXPECT_THROW(r.resolve_length(), NoReferences);
}

TEST(Summarize, SingleSentence) {
  const auto doc = make_document("d", {{4, "the only sentence here", R::Fact}});
  const auto s = summarize(request_for(doc, 10), default_lexicons());
  EXPECT_EQ(s.selected, (std::vector<int>{4}));
  EXPECT_EQ(s.word_count, 4);
  EXPECT_EQ(s.solver_status, SolverStatus::Optimal);
}

TEST(Summarize, EmptyDocumentRejected) {
  LabeledDocument doc;
  doc.doc_id = "empty";
  EXPECT_THROW(summarize(request_for(doc, 10), default_lexicons()), EmptyDocument);
}

TEST(Summarize, IssueAndJudgementIncludedWhenTheyFit) {
  std::mt19937_64 gen(21);
  const auto lex = default_lexicons();
  for (int k = 0; k < 25; ++k) {
    const auto doc = generate_document("d" + std::to_string(k), gen);
    int must = 0;
    for (const auto& s : doc.sentences)
      if (s.role == R::Issue || s.role == R::FinalJudgement) must += s.word_count;
    const auto run = summarize_detailed(request_for(doc, must + 60), lex);
    EXPECT_TRUE(verify_solution(run.problem, run.solution).empty());
    for (const auto& s : doc.sentences) {
      if (s.role != R::Issue && s.role != R::FinalJudgement) continue;
      EXPECT_NE(std::find(run.summary.selected.begin(), run.summary.selected.end(), s.id),
                run.summary.selected.end());
    }
  }
}

TEST(Summarize, ZeroBudgetRelaxesEverything) {
  std::mt19937_64 gen(4);
  const auto doc = generate_document("d", gen);
  const auto s = summarize(request_for(doc, 0), default_lexicons());
  EXPECT_TRUE(s.selected.empty());
  EXPECT_EQ(s.solver_status, SolverStatus::RelaxedQuotas);
  for (const auto& r : s.relaxations) EXPECT_EQ(r.granted, 0);
}

TEST(Summarize, RecoversPlantedOptimum) {
  const auto lex = default_lexicons();
  const auto profile = india_profile();
  for (std::uint64_t k = 0; k < 3; ++k) {
    const auto planted = oracle::planted_document("p" + std::to_string(k), 100 + k, lex, profile, 18, 20);
    const auto s = summarize(request_for(planted.doc, planted.budget), lex);
    EXPECT_EQ(s.selected, planted.gold);
    EXPECT_EQ(s.solver_status, SolverStatus::Optimal);
  }
}

TEST(RelaxQuotas, ArgumentDropsBeforeFact) {
  const auto profile = india_profile();
  std::vector<SegmentQuota> quotas = {{R::Fact, {0, 1}, 2}, {R::Argument, {2, 3}, 2}};
  const std::vector<int> lengths = {3, 3, 3, 3};
  const auto relaxed = relax_quotas(quotas, lengths, 9, profile);
  EXPECT_EQ(relaxed[0].min_count, 2);
  EXPECT_EQ(relaxed[1].min_count, 1);
}

TEST(RelaxQuotas, ZeroBudgetClearsAll) {
  const auto profile = india_profile();
  std::vector<SegmentQuota> quotas = {{R::Fact, {0}, 1}, {R::Issue, {1}, 1}, {R::FinalJudgement, {2}, 1}};
  for (const auto& q : relax_quotas(quotas, {2, 2, 2}, 0, profile)) EXPECT_EQ(q.min_count, 0);
}

TEST(RelaxQuotas, IssueAndJudgementGoLast) {
  const auto profile = india_profile();
  std::vector<SegmentQuota> quotas = {
      {R::FinalJudgement, {0}, 1}, {R::Issue, {1}, 1}, {R::Fact, {2, 3}, 2}, {R::Argument, {4}, 1}};
  const auto relaxed = relax_quotas(quotas, {4, 4, 4, 4, 4}, 8, profile);
  EXPECT_EQ(relaxed[0].min_count, 1);
  EXPECT_EQ(relaxed[1].min_count, 1);
  EXPECT_EQ(relaxed[2].min_count, 0);
  EXPECT_EQ(relaxed[3].min_count, 0);
}

TEST(RelaxQuotas, ExactlyOneDecrement) {
  const auto profile = india_profile();
  std::vector<SegmentQuota> quotas = {{R::Fact, {0, 1}, 2}, {R::Argument, {2, 3}, 2}};
  // minimal length 4 + 5 + 2 + 6 = 17; budget 15 needs one step
  const auto relaxed = relax_quotas(quotas, {4, 5, 2, 6}, 15, profile);
  EXPECT_EQ(relaxed[0].min_count, 2);
  EXPECT_EQ(relaxed[1].min_count, 1);
}

TEST(SummaryJson, RoundTripsText) {
  std::mt19937_64 gen(8);
  const auto doc = generate_document("json", gen);
  const auto s = summarize(request_for(doc, 60), default_lexicons());
  const auto json = summary_to_json(s, doc);
  const auto back = summary_from_json(json);
  const auto expected = to_text_summary(s, doc);
  ASSERT_EQ(back.sentences.size(), expected.sentences.size());
  for (std::size_t k = 0; k < back.sentences.size(); ++k) {
    EXPECT_EQ(back.sentences[k].text, expected.sentences[k].text);
    EXPECT_EQ(back.sentences[k].role, expected.sentences[k].role);
  }
  EXPECT_NE(json.find("\"solver_status\": \"" + std::string(status_name(s.solver_status)) + "\""),
            std::string::npos);
}

TEST(MakeSummary, CountsPerSegment) {
  const auto doc = make_document("d", {{1, "a b", R::Fact}, {2, "c", R::Issue}, {3, "d e f", R::Fact}});
  const auto s = make_summary(doc, {2, 0});
  EXPECT_EQ(s.selected, (std::vector<int>{1, 3}));
  EXPECT_EQ(s.word_count, 5);
  EXPECT_EQ(s.per_segment_counts.at(R::Fact), 2);
  EXPECT_EQ(s.per_segment_counts.at(R::Issue), 0);
}
