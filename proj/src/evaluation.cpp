#include "delsumm/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <boost/math/distributions/students_t.hpp>

#include "delsumm/summarizer.hpp"

namespace delsumm {

namespace {

RougeScore from_counts(double overlap, double candidate_total, double reference_total) {
  RougeScore s;
  if (candidate_total <= 0.0 || reference_total <= 0.0) return s;
  s.recall = overlap / reference_total;
  s.precision = overlap / candidate_total;
  if (s.recall + s.precision > 0.0) s.f = 2.0 * s.recall * s.precision / (s.recall + s.precision);
  return s;
}

std::map<std::vector<std::string>, int> ngram_counts(std::span<const std::string> tokens, int n) {
  std::map<std::vector<std::string>, int> counts;
  const auto len = static_cast<std::size_t>(n);
  if (tokens.size() < len) return counts;
  for (std::size_t k = 0; k + len <= tokens.size(); ++k)
    ++counts[std::vector<std::string>(tokens.begin() + static_cast<std::ptrdiff_t>(k),
                                      tokens.begin() + static_cast<std::ptrdiff_t>(k + len))];
  return counts;
}

void accumulate(RougeScore& into, const RougeScore& s) {
  into.recall += s.recall;
  into.precision += s.precision;
  into.f += s.f;
}

RougeScore divided(RougeScore s, double d) {
  s.recall /= d;
  s.precision /= d;
  s.f /= d;
  return s;
}

std::string bucket_text(const TextSummary& summary, const std::string& bucket, bool merge) {
  std::string out;
  for (const auto& s : summary.sentences) {
    if (!s.role || segment_bucket(*s.role, merge) != bucket) continue;
    if (!out.empty()) out.push_back(' ');
    out += s.text;
  }
  return out;
}

}  // namespace

RougeScore rouge_n(std::span<const std::string> candidate, std::span<const std::string> reference, int n) {
  if (n < 1) throw std::invalid_argument("n-gram order must be >= 1");
  const auto cand = ngram_counts(candidate, n);
  const auto ref = ngram_counts(reference, n);
  double overlap = 0.0;
  double ref_total = 0.0;
  double cand_total = 0.0;
  for (const auto& [gram, count] : ref) {
    ref_total += count;
    if (auto it = cand.find(gram); it != cand.end()) overlap += std::min(count, it->second);
  }
  for (const auto& [gram, count] : cand) cand_total += count;
  return from_counts(overlap, cand_total, ref_total);
}

std::size_t lcs_length(std::span<const std::string> a, std::span<const std::string> b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> prev(b.size() + 1, 0);
  std::vector<std::size_t> cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j)
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

RougeScore rouge_l(std::span<const std::string> candidate, std::span<const std::string> reference) {
  const double lcs = static_cast<double>(lcs_length(candidate, reference));
  return from_counts(lcs, static_cast<double>(candidate.size()), static_cast<double>(reference.size()));
}

std::vector<std::string> content_tokens(std::string_view text, const std::set<std::string>& stopwords) {
  auto tokens = tokenize(text);
  std::erase_if(tokens, [&](const std::string& t) { return stopwords.contains(t); });
  return tokens;
}

OverallScores evaluate(const TextSummary& candidate, const std::vector<TextSummary>& references,
                       const std::set<std::string>& stopwords) {
  if (references.empty()) throw NoReferences();
  const auto cand = content_tokens(candidate.joined_text(), stopwords);
  OverallScores total;
  for (const auto& ref : references) {
    const auto r = content_tokens(ref.joined_text(), stopwords);
    accumulate(total.rouge2, rouge_n(cand, r, 2));
    accumulate(total.rouge_l, rouge_l(cand, r));
  }
  const double k = static_cast<double>(references.size());
  total.rouge2 = divided(total.rouge2, k);
  total.rouge_l = divided(total.rouge_l, k);
  return total;
}

std::string segment_bucket(RhetoricalRole role, bool merge_precedent_ratio) {
  if (merge_precedent_ratio && (role == RhetoricalRole::Precedent || role == RhetoricalRole::Ratio))
    return "precedent+ratio";
  return std::string(role_name(role));
}

std::map<std::string, RougeScore> evaluate_segmentwise(const TextSummary& candidate, const TextSummary& reference,
                                                       const std::set<std::string>& stopwords,
                                                       bool merge_precedent_ratio) {
  std::set<std::string> buckets;
  for (const auto& s : reference.sentences)
    if (s.role) buckets.insert(segment_bucket(*s.role, merge_precedent_ratio));
  std::map<std::string, RougeScore> out;
  for (const auto& bucket : buckets) {
    const auto cand = content_tokens(bucket_text(candidate, bucket, merge_precedent_ratio), stopwords);
    const auto ref = content_tokens(bucket_text(reference, bucket, merge_precedent_ratio), stopwords);
    out[bucket] = rouge_l(cand, ref);
  }
  return out;
}

std::map<std::string, RougeScore> evaluate_segmentwise(const TextSummary& candidate,
                                                       const std::vector<TextSummary>& references,
                                                       const std::set<std::string>& stopwords,
                                                       bool merge_precedent_ratio) {
  if (references.empty()) throw NoReferences();
  std::map<std::string, RougeScore> sum;
  std::map<std::string, int> count;
  for (const auto& ref : references) {
    for (const auto& [bucket, score] : evaluate_segmentwise(candidate, ref, stopwords, merge_precedent_ratio)) {
      accumulate(sum[bucket], score);
      ++count[bucket];
    }
  }
  for (auto& [bucket, score] : sum) score = divided(score, count[bucket]);
  return sum;
}

EvaluationReport evaluate_report(const TextSummary& candidate, const std::vector<TextSummary>& references,
                                 const std::set<std::string>& stopwords, bool merge_precedent_ratio) {
  EvaluationReport report;
  report.overall = evaluate(candidate, references, stopwords);
  report.per_segment = evaluate_segmentwise(candidate, references, stopwords, merge_precedent_ratio);
  return report;
}

MetricRow metric_row(const OverallScores& s) {
  return {s.rouge2.recall, s.rouge2.f, s.rouge_l.recall, s.rouge_l.f};
}

MetricRow mean_row(const std::vector<MetricRow>& rows) {
  MetricRow m;
  if (rows.empty()) return m;
  for (const auto& r : rows) {
    m.rouge2_recall += r.rouge2_recall;
    m.rouge2_f += r.rouge2_f;
    m.rouge_l_recall += r.rouge_l_recall;
    m.rouge_l_f += r.rouge_l_f;
  }
  const double k = static_cast<double>(rows.size());
  m.rouge2_recall /= k;
  m.rouge2_f /= k;
  m.rouge_l_recall /= k;
  m.rouge_l_f /= k;
  return m;
}

TTestResult paired_t_test(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("paired samples differ in size");
  TTestResult r;
  r.n = a.size();
  if (r.n < 2) return r;
  std::vector<double> d(r.n);
  for (std::size_t k = 0; k < r.n; ++k) d[k] = a[k] - b[k];
  double mean = 0.0;
  for (double v : d) mean += v;
  mean /= static_cast<double>(r.n);
  double ss = 0.0;
  for (double v : d) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / static_cast<double>(r.n - 1));
  const double scale = std::max(1.0, std::abs(mean));
  if (sd <= 1e-15 * scale) {
    r.t = 0.0;
    r.p_value = std::abs(mean) <= 1e-15 ? 1.0 : 0.0;
    return r;
  }
  r.t = mean / (sd / std::sqrt(static_cast<double>(r.n)));
  boost::math::students_t dist(static_cast<double>(r.n - 1));
  r.p_value = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(r.t)));
  r.p_value = std::min(1.0, r.p_value);
  return r;
}

std::string format_score(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", value);
  return buf;
}

std::string format_table(const std::vector<std::string>& header,
                         const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size(), 0);
  auto widen = [&](const std::vector<std::string>& row) {
    for (std::size_t c = 0; c < row.size() && c < width.size(); ++c) width[c] = std::max(width[c], row[c].size());
  };
  widen(header);
  for (const auto& r : rows) widen(r);

  std::ostringstream out;
  auto emit = [&](const std::vector<std::string>& row) {
    for (std::size_t c = 0; c < width.size(); ++c) {
      const std::string cell = c < row.size() ? row[c] : "";
      const std::string pad(width[c] - cell.size(), ' ');
      if (c > 0) out << "  ";
      if (c == 0) out << cell << pad;
      else out << pad << cell;
    }
    out << '\n';
  };
  emit(header);
  std::size_t total = 0;
  for (std::size_t c = 0; c < width.size(); ++c) total += width[c] + (c > 0 ? 2 : 0);
  out << std::string(total, '-') << '\n';
  for (const auto& r : rows) emit(r);
  return out.str();
}

}  // namespace delsumm
