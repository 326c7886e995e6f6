#include "delsumm/summarizer.hpp"

#include <algorithm>

#include <json.hpp>

namespace delsumm {

namespace {

bool reduced_last(RhetoricalRole role) {
  return role == RhetoricalRole::FinalJudgement || role == RhetoricalRole::Issue;
}

}  // namespace

int target_length(const std::vector<TextSummary>& references) {
  if (references.empty()) throw NoReferences();
  long long total = 0;
  for (const auto& ref : references) total += static_cast<long long>(tokenize(ref.joined_text()).size());
  return static_cast<int>(total / static_cast<long long>(references.size()));
}

int SummaryRequest::resolve_length() const {
  if (target_length) {
    if (*target_length < 0) throw SummarizeError("target length must be non-negative");
    return *target_length;
  }
  return delsumm::target_length(references);
}

std::vector<SegmentQuota> relax_quotas(std::vector<SegmentQuota> quotas, const std::vector<int>& lengths,
                                       int budget, const GuidelineProfile& profile) {
  while (quota_minimal_length(quotas, lengths) > budget) {
    SegmentQuota* victim = nullptr;
    for (auto& q : quotas) {
      if (q.min_count <= 0) continue;
      if (victim == nullptr) {
        victim = &q;
        continue;
      }
      auto key = [&](const SegmentQuota& s) {
        return std::make_tuple(reduced_last(s.role), profile.weight(s.role), role_index(s.role));
      };
      if (key(q) < key(*victim)) victim = &q;
    }
    if (victim == nullptr) break;
    --victim->min_count;
  }
  return quotas;
}

Summary make_summary(const LabeledDocument& doc, const std::vector<std::size_t>& chosen) {
  std::vector<std::size_t> order = chosen;
  std::sort(order.begin(), order.end());
  order.erase(std::unique(order.begin(), order.end()), order.end());
  Summary s;
  s.doc_id = doc.doc_id;
  for (RhetoricalRole role : kAllRoles)
    if (!doc.segment(role).empty()) s.per_segment_counts[role] = 0;
  for (std::size_t i : order) {
    const Sentence& sent = doc.sentences.at(i);
    s.selected.push_back(sent.id);
    s.word_count += sent.word_count;
    ++s.per_segment_counts[sent.role];
  }
  return s;
}

SummaryRun summarize_detailed(const SummaryRequest& request, const Lexicons& lexicons) {
  const LabeledDocument& doc = request.doc;
  if (doc.empty()) throw EmptyDocument(doc.doc_id);
  const int budget = request.resolve_length();

  SummaryRun run;
  const ContentIndex index = build_content_index(doc, lexicons, request.profile.content_scores);
  run.problem = build_problem(doc, index, request.profile, budget);

  std::vector<QuotaRelaxation> relaxations;
  if (quota_minimal_length(run.problem.quotas, run.problem.lengths) > budget) {
    auto relaxed = relax_quotas(run.problem.quotas, run.problem.lengths, budget, request.profile);
    for (std::size_t q = 0; q < relaxed.size(); ++q) {
      const int requested = run.problem.quotas[q].min_count;
      if (relaxed[q].min_count != requested)
        relaxations.push_back({relaxed[q].role, requested, relaxed[q].min_count});
    }
    std::erase_if(relaxed, [](const SegmentQuota& q) { return q.min_count <= 0; });
    run.problem.quotas = std::move(relaxed);
  }

  run.solution = solve_exact(run.problem, request.solver);
  if (run.solution.status == IlpStatus::Infeasible)
    throw std::logic_error("quota relaxation left an infeasible problem for '" + doc.doc_id + "'");

  std::vector<std::size_t> chosen;
  for (std::size_t i = 0; i < run.solution.x.size(); ++i)
    if (run.solution.x[i]) chosen.push_back(i);
  run.summary = make_summary(doc, chosen);
  run.summary.objective = run.solution.objective;
  run.summary.proven_optimal = run.solution.status == IlpStatus::Optimal;
  run.summary.relaxations = std::move(relaxations);
  if (!run.summary.relaxations.empty())
    run.summary.solver_status = SolverStatus::RelaxedQuotas;
  else if (!run.summary.proven_optimal)
    run.summary.solver_status = SolverStatus::FeasibleTimeout;
  else
    run.summary.solver_status = SolverStatus::Optimal;
  return run;
}

Summary summarize(const SummaryRequest& request, const Lexicons& lexicons) {
  return summarize_detailed(request, lexicons).summary;
}

std::string summary_to_json(const Summary& summary, const LabeledDocument& doc) {
  nlohmann::ordered_json out;
  out["doc_id"] = summary.doc_id;
  nlohmann::ordered_json sentences = nlohmann::ordered_json::array();
  for (int id : summary.selected) {
    auto it = std::find_if(doc.sentences.begin(), doc.sentences.end(),
                           [id](const Sentence& s) { return s.id == id; });
    if (it == doc.sentences.end())
      throw std::out_of_range("summary references unknown sentence id " + std::to_string(id));
    nlohmann::ordered_json s;
    s["sent_id"] = it->id;
    s["position"] = it->position;
    s["role"] = role_name(it->role);
    s["text"] = it->text;
    sentences.push_back(std::move(s));
  }
  out["sentences"] = std::move(sentences);
  out["word_count"] = summary.word_count;
  out["objective"] = summary.objective;
  out["solver_status"] = status_name(summary.solver_status);
  out["proven_optimal"] = summary.proven_optimal;
  nlohmann::ordered_json counts = nlohmann::ordered_json::object();
  for (const auto& [role, count] : summary.per_segment_counts) counts[std::string(role_name(role))] = count;
  out["per_segment_counts"] = std::move(counts);
  nlohmann::ordered_json relax = nlohmann::ordered_json::array();
  for (const auto& r : summary.relaxations)
    relax.push_back({{"role", role_name(r.role)}, {"requested", r.requested}, {"granted", r.granted}});
  out["relaxations"] = std::move(relax);
  return out.dump(2) + "\n";
}

TextSummary summary_from_json(const std::string& json_text) {
  const auto obj = nlohmann::json::parse(json_text);
  TextSummary out;
  out.doc_id = obj.at("doc_id").get<std::string>();
  for (const auto& s : obj.at("sentences")) {
    SummarySentence sent;
    if (s.contains("role")) sent.role = parse_role(s.at("role").get<std::string>());
    sent.text = s.at("text").get<std::string>();
    out.sentences.push_back(std::move(sent));
  }
  return out;
}

}  // namespace delsumm
