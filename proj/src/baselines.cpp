#include "delsumm/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include "delsumm/evaluation.hpp"
#include "delsumm/summarizer.hpp"

namespace delsumm {

namespace {

std::vector<std::size_t> rank_order(const LabeledDocument& doc, const std::vector<double>& scores) {
  std::vector<std::size_t> order(doc.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return doc.sentences[a].position < doc.sentences[b].position;
  });
  return order;
}

std::map<std::string, int> document_frequency(const std::vector<std::vector<std::string>>& sentences) {
  std::map<std::string, int> df;
  for (const auto& tokens : sentences) {
    std::set<std::string> distinct(tokens.begin(), tokens.end());
    for (const auto& t : distinct) ++df[t];
  }
  return df;
}

std::vector<std::vector<std::string>> sentence_terms(const LabeledDocument& doc,
                                                     const std::set<std::string>& stopwords) {
  std::vector<std::vector<std::string>> terms;
  terms.reserve(doc.size());
  for (const auto& s : doc.sentences) terms.push_back(content_tokens(s.text, stopwords));
  return terms;
}

}  // namespace

std::string_view baseline_name(BaselineKind kind) {
  switch (kind) {
    case BaselineKind::Luhn: return "luhn";
    case BaselineKind::LexRank: return "lexrank";
    case BaselineKind::LetSumProportions: return "letsum";
  }
  return "unknown";
}

BaselineKind parse_baseline(std::string_view name) {
  for (auto k : {BaselineKind::Luhn, BaselineKind::LexRank, BaselineKind::LetSumProportions})
    if (baseline_name(k) == name) return k;
  throw std::invalid_argument("unknown baseline '" + std::string(name) + "'");
}

std::vector<std::size_t> select_by_score(const LabeledDocument& doc, const std::vector<double>& scores,
                                         int budget, bool positive_only) {
  std::vector<std::size_t> chosen;
  long long remaining = budget;
  for (std::size_t i : rank_order(doc, scores)) {
    if (positive_only && !(scores[i] > 0.0)) continue;
    if (doc.sentences[i].word_count > remaining) continue;
    chosen.push_back(i);
    remaining -= doc.sentences[i].word_count;
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

std::vector<double> luhn_scores(const LabeledDocument& doc, const std::set<std::string>& stopwords,
                                const LuhnOptions& options) {
  std::map<std::string, int> freq;
  std::vector<std::vector<std::string>> tokens;
  for (const auto& s : doc.sentences) {
    tokens.push_back(tokenize(s.text));
    for (const auto& t : tokens.back())
      if (!stopwords.contains(t)) ++freq[t];
  }
  auto significant = [&](const std::string& t) {
    if (stopwords.contains(t)) return false;
    auto it = freq.find(t);
    return it != freq.end() && it->second >= options.min_frequency;
  };

  std::vector<double> scores(doc.size(), 0.0);
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& words = tokens[i];
    double best = 0.0;
    std::size_t k = 0;
    while (k < words.size()) {
      if (!significant(words[k])) {
        ++k;
        continue;
      }
      // cluster starting at k
      std::size_t last = k;
      int count = 1;
      int gap = 0;
      std::size_t j = k + 1;
      for (; j < words.size(); ++j) {
        if (significant(words[j])) {
          ++count;
          last = j;
          gap = 0;
        } else if (++gap >= options.max_gap) {
          break;
        }
      }
      const double span = static_cast<double>(last - k + 1);
      best = std::max(best, static_cast<double>(count * count) / span);
      k = last + 1;
    }
    scores[i] = best;
  }
  return scores;
}

Summary luhn_summarize(const LabeledDocument& doc, int budget, const std::set<std::string>& stopwords,
                       const LuhnOptions& options) {
  return make_summary(doc, select_by_score(doc, luhn_scores(doc, stopwords, options), budget, true));
}

std::vector<std::map<std::string, double>> tfidf_vectors(const LabeledDocument& doc,
                                                         const std::set<std::string>& stopwords) {
  const auto terms = sentence_terms(doc, stopwords);
  const auto df = document_frequency(terms);
  const double n = static_cast<double>(doc.size());
  std::vector<std::map<std::string, double>> vectors(doc.size());
  for (std::size_t i = 0; i < terms.size(); ++i) {
    for (const auto& t : terms[i]) vectors[i][t] += 1.0;
    for (auto& [t, w] : vectors[i]) w *= std::log(n / df.at(t));
  }
  return vectors;
}

double cosine(const std::map<std::string, double>& a, const std::map<std::string, double>& b) {
  double dot = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (const auto& [t, w] : a) {
    na += w * w;
    if (auto it = b.find(t); it != b.end()) dot += w * it->second;
  }
  for (const auto& [t, w] : b) nb += w * w;
  if (na <= 0.0 || nb <= 0.0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

std::vector<std::vector<std::size_t>> lexrank_graph(const LabeledDocument& doc,
                                                    const std::set<std::string>& stopwords,
                                                    double threshold) {
  const auto vectors = tfidf_vectors(doc, stopwords);
  std::vector<std::vector<std::size_t>> adj(doc.size());
  for (std::size_t i = 0; i < doc.size(); ++i)
    for (std::size_t j = i + 1; j < doc.size(); ++j)
      if (cosine(vectors[i], vectors[j]) >= threshold) {
        adj[i].push_back(j);
        adj[j].push_back(i);
      }
  for (auto& row : adj) std::sort(row.begin(), row.end());
  return adj;
}

std::vector<double> lexrank_scores(const LabeledDocument& doc, const std::set<std::string>& stopwords,
                                   const LexRankOptions& options) {
  const std::size_t n = doc.size();
  if (n == 0) return {};
  const auto adj = lexrank_graph(doc, stopwords, options.threshold);
  const double uniform = 1.0 / static_cast<double>(n);
  std::vector<double> p(n, uniform);
  std::vector<double> next(n);
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    double dangling = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      if (adj[i].empty()) dangling += p[i];
    std::fill(next.begin(), next.end(), (1.0 - options.damping) * uniform + options.damping * dangling * uniform);
    for (std::size_t i = 0; i < n; ++i) {
      if (adj[i].empty()) continue;
      const double share = options.damping * p[i] / static_cast<double>(adj[i].size());
      for (std::size_t j : adj[i]) next[j] += share;
    }
    double delta = 0.0;
    for (std::size_t i = 0; i < n; ++i) delta += std::abs(next[i] - p[i]);
    std::swap(p, next);
    if (delta < options.tolerance) break;
  }
  return p;
}

Summary lexrank_summarize(const LabeledDocument& doc, int budget, const std::set<std::string>& stopwords,
                          const LexRankOptions& options) {
  return make_summary(doc, select_by_score(doc, lexrank_scores(doc, stopwords, options), budget, false));
}

ThemeMapping default_theme_mapping() {
  ThemeMapping m{};
  m[role_index(RhetoricalRole::Fact)] = LetSumTheme::Introduction;
  m[role_index(RhetoricalRole::Issue)] = LetSumTheme::Context;
  m[role_index(RhetoricalRole::Argument)] = LetSumTheme::Context;
  m[role_index(RhetoricalRole::RulingByLowerCourt)] = LetSumTheme::Context;
  m[role_index(RhetoricalRole::Statute)] = LetSumTheme::JuridicalAnalysis;
  m[role_index(RhetoricalRole::Precedent)] = LetSumTheme::JuridicalAnalysis;
  m[role_index(RhetoricalRole::Ratio)] = LetSumTheme::JuridicalAnalysis;
  m[role_index(RhetoricalRole::FinalJudgement)] = LetSumTheme::Conclusion;
  return m;
}

std::array<int, 4> letsum_budgets(int budget) {
  std::array<int, 4> b{};
  b[0] = budget * 10 / 100;
  b[1] = budget * 25 / 100;
  b[3] = budget * 5 / 100;
  b[2] = budget - b[0] - b[1] - b[3];
  return b;
}

std::vector<double> tfidf_sentence_scores(const LabeledDocument& doc, const std::set<std::string>& stopwords) {
  std::vector<double> scores;
  for (const auto& v : tfidf_vectors(doc, stopwords)) {
    double s = 0.0;
    for (const auto& [t, w] : v) s += w;
    scores.push_back(s);
  }
  return scores;
}

Summary letsum_summarize(const LabeledDocument& doc, int budget, const std::set<std::string>& stopwords,
                         const ThemeMapping& mapping) {
  const auto scores = tfidf_sentence_scores(doc, stopwords);
  const auto order = rank_order(doc, scores);
  const auto budgets = letsum_budgets(budget);
  std::vector<bool> taken(doc.size(), false);
  std::vector<std::size_t> chosen;
  long long used = 0;

  auto theme_of = [&](std::size_t i) { return mapping[role_index(doc.sentences[i].role)]; };
  for (std::size_t t = 0; t < 4; ++t) {
    long long remaining = budgets[t];
    for (std::size_t i : order) {
      if (static_cast<std::size_t>(theme_of(i)) != t) continue;
      if (doc.sentences[i].word_count > remaining) continue;
      taken[i] = true;
      chosen.push_back(i);
      remaining -= doc.sentences[i].word_count;
      used += doc.sentences[i].word_count;
    }
  }
  // unused budget spills into the juridical analysis theme
  long long spill = budget - used;
  for (std::size_t i : order) {
    if (taken[i] || theme_of(i) != LetSumTheme::JuridicalAnalysis) continue;
    if (doc.sentences[i].word_count > spill) continue;
    taken[i] = true;
    chosen.push_back(i);
    spill -= doc.sentences[i].word_count;
  }
  return make_summary(doc, chosen);
}

Summary baseline_summarize(BaselineKind kind, const LabeledDocument& doc, int budget,
                           const std::set<std::string>& stopwords) {
  switch (kind) {
    case BaselineKind::Luhn: return luhn_summarize(doc, budget, stopwords);
    case BaselineKind::LexRank: return lexrank_summarize(doc, budget, stopwords);
    case BaselineKind::LetSumProportions: return letsum_summarize(doc, budget, stopwords);
  }
  throw std::invalid_argument("unknown baseline");
}

}  // namespace delsumm
