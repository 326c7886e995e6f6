#include "delsumm/robustness.hpp"

#include <random>

#include <json.hpp>

#include "delsumm/parallel.hpp"
#include "delsumm/summarizer.hpp"

namespace delsumm {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double unit_interval(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

nlohmann::ordered_json row_json(const MetricRow& r) {
  return {{"rouge2_recall", r.rouge2_recall},
          {"rouge2_f", r.rouge2_f},
          {"rougeL_recall", r.rouge_l_recall},
          {"rougeL_f", r.rouge_l_f}};
}

MetricRow delta(const MetricRow& noisy, const MetricRow& gold) {
  return {noisy.rouge2_recall - gold.rouge2_recall, noisy.rouge2_f - gold.rouge2_f,
          noisy.rouge_l_recall - gold.rouge_l_recall, noisy.rouge_l_f - gold.rouge_l_f};
}

}  // namespace

std::uint64_t document_seed(std::uint64_t seed, const std::string& doc_id) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (unsigned char c : doc_id) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return splitmix64(seed ^ splitmix64(h));
}

LabeledDocument perturb_labels(const LabeledDocument& doc, const NoiseSpec& spec) {
  if (!(spec.rate >= 0.0 && spec.rate <= 1.0)) throw std::invalid_argument("noise rate must lie in [0, 1]");
  LabeledDocument out = doc;
  std::mt19937_64 gen(document_seed(spec.seed, doc.doc_id));
  for (auto& s : out.sentences) {
    const double u = unit_interval(gen);
    const std::uint64_t pick = gen();
    if (u >= spec.rate) continue;
    // one of the other seven roles, uniformly
    auto k = static_cast<std::size_t>(pick % (kRoleCount - 1));
    if (k >= role_index(s.role)) ++k;
    s.role = kAllRoles[k];
  }
  return out;
}

RobustnessReport robustness_report(const std::vector<LabeledDocument>& corpus, const ReferenceIndex& references,
                                   const GuidelineProfile& profile, const Lexicons& lexicons,
                                   const NoiseSpec& spec, const RobustnessOptions& options) {
  RobustnessReport report;
  report.spec = spec;
  report.rows.resize(corpus.size());

  parallel_for(corpus.size(), options.workers, [&](std::size_t k) {
    const LabeledDocument& gold_doc = corpus[k];
    auto refs = references.find(gold_doc.doc_id);
    if (refs == references.end() || refs->second.empty()) throw NoReferences();

    const LabeledDocument noisy_doc = perturb_labels(gold_doc, spec);
    SummaryRequest request;
    request.profile = profile;
    request.target_length = options.length_override;
    request.references = refs->second;
    request.solver = options.solver;

    request.doc = gold_doc;
    const Summary gold = summarize(request, lexicons);
    request.doc = noisy_doc;
    const Summary noisy = summarize(request, lexicons);

    RobustnessRow row;
    row.doc_id = gold_doc.doc_id;
    std::size_t same = 0;
    for (std::size_t i = 0; i < gold_doc.size(); ++i)
      same += gold_doc.sentences[i].role == noisy_doc.sentences[i].role ? 1 : 0;
    row.label_accuracy = gold_doc.empty() ? 1.0 : static_cast<double>(same) / static_cast<double>(gold_doc.size());
    row.gold = metric_row(evaluate(to_text_summary(gold, gold_doc), refs->second, lexicons.stopwords));
    row.noisy = metric_row(evaluate(to_text_summary(noisy, gold_doc), refs->second, lexicons.stopwords));
    report.rows[k] = std::move(row);
  });

  std::vector<MetricRow> gold_rows;
  std::vector<MetricRow> noisy_rows;
  double accuracy = 0.0;
  for (const auto& r : report.rows) {
    gold_rows.push_back(r.gold);
    noisy_rows.push_back(r.noisy);
    accuracy += r.label_accuracy;
  }
  report.mean_gold = mean_row(gold_rows);
  report.mean_noisy = mean_row(noisy_rows);
  report.mean_label_accuracy = report.rows.empty() ? 1.0 : accuracy / static_cast<double>(report.rows.size());
  return report;
}

std::string robustness_table(const RobustnessReport& report) {
  std::vector<std::vector<std::string>> rows;
  auto line = [](const std::string& id, double acc, double gold, double noisy) {
    return std::vector<std::string>{id, format_score(acc), format_score(gold), format_score(noisy),
                                    format_score(noisy - gold)};
  };
  for (const auto& r : report.rows) rows.push_back(line(r.doc_id, r.label_accuracy, r.gold.rouge_l_f, r.noisy.rouge_l_f));
  rows.push_back(line("mean", report.mean_label_accuracy, report.mean_gold.rouge_l_f, report.mean_noisy.rouge_l_f));
  return format_table({"doc_id", "label_accuracy", "rougeL_F_gold", "rougeL_F_noisy", "delta"}, rows);
}

std::string robustness_json(const RobustnessReport& report) {
  nlohmann::ordered_json out;
  out["noise"] = {{"policy", "uniform_flip"}, {"rate", report.spec.rate}, {"seed", report.spec.seed}};
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"doc_id", r.doc_id},
                    {"label_accuracy", r.label_accuracy},
                    {"gold", row_json(r.gold)},
                    {"noisy", row_json(r.noisy)},
                    {"delta", row_json(delta(r.noisy, r.gold))}});
  }
  out["documents"] = std::move(rows);
  out["mean"] = {{"label_accuracy", report.mean_label_accuracy},
                 {"gold", row_json(report.mean_gold)},
                 {"noisy", row_json(report.mean_noisy)},
                 {"delta", row_json(delta(report.mean_noisy, report.mean_gold))}};
  return out.dump(2) + "\n";
}

}  // namespace delsumm
