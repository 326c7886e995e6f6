#pragma once

#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "delsumm/corpus.hpp"

namespace delsumm {

struct RougeScore {
  double recall = 0.0;
  double precision = 0.0;
  double f = 0.0;
};

// Clipped n-gram overlap. Empty denominators give zeros.
RougeScore rouge_n(std::span<const std::string> candidate, std::span<const std::string> reference, int n);

// Summary-level LCS over the two token streams.
RougeScore rouge_l(std::span<const std::string> candidate, std::span<const std::string> reference);

// Two rolling rows, so memory is linear in the shorter stream.
std::size_t lcs_length(std::span<const std::string> a, std::span<const std::string> b);

// tokenize() minus stopwords.
std::vector<std::string> content_tokens(std::string_view text, const std::set<std::string>& stopwords);

struct OverallScores {
  RougeScore rouge2;
  RougeScore rouge_l;
};

struct EvaluationReport {
  OverallScores overall;
  std::map<std::string, RougeScore> per_segment;  // ROUGE-L, keyed by bucket name
};

// ROUGE-2 and ROUGE-L of the candidate against each reference after stopword
// removal, arithmetic mean over references. Throws NoReferences.
OverallScores evaluate(const TextSummary& candidate, const std::vector<TextSummary>& references,
                       const std::set<std::string>& stopwords);

// Bucket used for segment-wise scores: the role name, or "precedent+ratio"
// when the two are merged.
std::string segment_bucket(RhetoricalRole role, bool merge_precedent_ratio);

// Per-bucket ROUGE-L against one role-labeled reference. Buckets absent from
// the reference are omitted; unlabeled sentences are ignored.
std::map<std::string, RougeScore> evaluate_segmentwise(const TextSummary& candidate, const TextSummary& reference,
                                                       const std::set<std::string>& stopwords,
                                                       bool merge_precedent_ratio = true);

// Mean over references, per bucket, counting only references that contain it.
std::map<std::string, RougeScore> evaluate_segmentwise(const TextSummary& candidate,
                                                       const std::vector<TextSummary>& references,
                                                       const std::set<std::string>& stopwords,
                                                       bool merge_precedent_ratio = true);

EvaluationReport evaluate_report(const TextSummary& candidate, const std::vector<TextSummary>& references,
                                 const std::set<std::string>& stopwords, bool merge_precedent_ratio = true);

// The four columns of the comparison table.
struct MetricRow {
  double rouge2_recall = 0.0;
  double rouge2_f = 0.0;
  double rouge_l_recall = 0.0;
  double rouge_l_f = 0.0;
};

MetricRow metric_row(const OverallScores& scores);
MetricRow mean_row(const std::vector<MetricRow>& rows);

inline constexpr std::array<const char*, 4> kMetricColumns = {"R2-R", "R2-F", "RL-R", "RL-F"};

struct TTestResult {
  double t = 0.0;
  double p_value = 1.0;
  std::size_t n = 0;
};

// Paired two-sided Student's t-test. Pairs with zero variance of differences
// give p = 1 when the mean difference is zero and p = 0 otherwise; fewer than
// two pairs give p = 1.
TTestResult paired_t_test(std::span<const double> a, std::span<const double> b);

// Left-aligned first column, right-aligned numeric columns.
std::string format_table(const std::vector<std::string>& header,
                         const std::vector<std::vector<std::string>>& rows);

std::string format_score(double value);

}  // namespace delsumm
