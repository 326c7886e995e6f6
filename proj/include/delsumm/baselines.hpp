#pragma once

#include <array>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "delsumm/corpus.hpp"

namespace delsumm {

enum class BaselineKind { Luhn, LexRank, LetSumProportions };

std::string_view baseline_name(BaselineKind kind);
BaselineKind parse_baseline(std::string_view name);

// Takes sentences in descending score order (ties: lower position) while they
// fit in `budget`; sentences scoring <= 0 are skipped when `positive_only`.
// Returns indices in document order.
std::vector<std::size_t> select_by_score(const LabeledDocument& doc, const std::vector<double>& scores,
                                         int budget, bool positive_only);

// Luhn ---------------------------------------------------------------------

struct LuhnOptions {
  int min_frequency = 2;  // a non-stopword is significant at this document frequency
  int max_gap = 4;        // this many insignificant tokens in a row end a cluster
};

// Best cluster score per sentence: significant^2 / cluster span.
std::vector<double> luhn_scores(const LabeledDocument& doc, const std::set<std::string>& stopwords,
                                const LuhnOptions& options = {});

Summary luhn_summarize(const LabeledDocument& doc, int budget, const std::set<std::string>& stopwords,
                       const LuhnOptions& options = {});

// LexRank ------------------------------------------------------------------

struct LexRankOptions {
  double threshold = 0.1;
  double damping = 0.85;
  double tolerance = 1e-6;
  int max_iterations = 10000;
};

// TF-IDF vectors per sentence, IDF = ln(N / df) over the document's sentences.
std::vector<std::map<std::string, double>> tfidf_vectors(const LabeledDocument& doc,
                                                         const std::set<std::string>& stopwords);

double cosine(const std::map<std::string, double>& a, const std::map<std::string, double>& b);

// Thresholded similarity graph without self loops; rows are neighbours.
std::vector<std::vector<std::size_t>> lexrank_graph(const LabeledDocument& doc,
                                                    const std::set<std::string>& stopwords,
                                                    double threshold);

// Stationary distribution of the degree-normalized graph walk with uniform
// teleport; dangling nodes jump uniformly.
std::vector<double> lexrank_scores(const LabeledDocument& doc, const std::set<std::string>& stopwords,
                                   const LexRankOptions& options = {});

Summary lexrank_summarize(const LabeledDocument& doc, int budget, const std::set<std::string>& stopwords,
                          const LexRankOptions& options = {});

// LetSum -------------------------------------------------------------------

enum class LetSumTheme { Introduction, Context, JuridicalAnalysis, Conclusion };

using ThemeMapping = std::array<LetSumTheme, kRoleCount>;

// Fact -> Introduction; Issue, Argument, RulingByLowerCourt -> Context;
// Statute, Precedent, Ratio -> JuridicalAnalysis; FinalJudgement -> Conclusion.
ThemeMapping default_theme_mapping();

// 10 / 25 / 60 / 5 percent of the budget; rounding remainder goes to
// JuridicalAnalysis.
std::array<int, 4> letsum_budgets(int budget);

// Sum of tf * idf over the sentence's distinct non-stopword terms.
std::vector<double> tfidf_sentence_scores(const LabeledDocument& doc, const std::set<std::string>& stopwords);

Summary letsum_summarize(const LabeledDocument& doc, int budget, const std::set<std::string>& stopwords,
                         const ThemeMapping& mapping = default_theme_mapping());

Summary baseline_summarize(BaselineKind kind, const LabeledDocument& doc, int budget,
                           const std::set<std::string>& stopwords);

}  // namespace delsumm
