#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "delsumm/content_words.hpp"
#include "delsumm/corpus.hpp"
#include "delsumm/guidelines.hpp"
#include "delsumm/ilp.hpp"

namespace delsumm {

class SummarizeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NoReferences : public SummarizeError {
 public:
  NoReferences() : SummarizeError("at least one reference summary is required") {}
};

class EmptyDocument : public SummarizeError {
 public:
  explicit EmptyDocument(const std::string& doc_id)
      : SummarizeError("document '" + doc_id + "' has no sentences") {}
};

// Floor of the mean reference length, in tokens.
int target_length(const std::vector<TextSummary>& references);

struct SummaryRequest {
  LabeledDocument doc;
  GuidelineProfile profile;
  std::optional<int> target_length;
  std::vector<TextSummary> references;
  SolverOptions solver;

  // target_length when set, otherwise derived from references.
  int resolve_length() const;
};

// Lowers quotas one sentence at a time, lowest-weight segment first (ties by
// role order, Final judgement and Issue last), until the shortest selection
// meeting them fits in `budget`.
std::vector<SegmentQuota> relax_quotas(std::vector<SegmentQuota> quotas, const std::vector<int>& lengths,
                                       int budget, const GuidelineProfile& profile);

// Everything the pipeline produced for one document, kept for diagnostics.
struct SummaryRun {
  Summary summary;
  IlpProblem problem;
  IlpSolution solution;
};

SummaryRun summarize_detailed(const SummaryRequest& request, const Lexicons& lexicons);

Summary summarize(const SummaryRequest& request, const Lexicons& lexicons);

// Summary JSON: doc_id, sentences [{sent_id, position, role, text}],
// word_count, objective, solver_status, per_segment_counts, relaxations.
std::string summary_to_json(const Summary& summary, const LabeledDocument& doc);

// Reads back the sentences of a summary JSON file as text.
TextSummary summary_from_json(const std::string& json_text);

// Summary from an explicit selection of sentence indices (baselines).
Summary make_summary(const LabeledDocument& doc, const std::vector<std::size_t>& chosen);

}  // namespace delsumm
