#include "delsumm/guidelines.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace delsumm {

namespace {

using R = RhetoricalRole;

constexpr std::array<std::pair<InformativenessRule, std::string_view>, 6> kRuleNames = {{
    {InformativenessRule::InversePosition, "inverse_position"},
    {InformativenessRule::StatuteFlag, "statute_flag"},
    {InformativenessRule::PrecedentFlag, "precedent_flag"},
    {InformativenessRule::PositionTimesCitation, "position_times_citation"},
    {InformativenessRule::ConstantWeight, "constant_weight"},
    {InformativenessRule::Zero, "zero"},
}};

GuidelineProfile india_shape(std::string name, const std::array<double, kRoleCount>& weights) {
  GuidelineProfile p;
  p.name = std::move(name);
  p.segment_weights = weights;
  for (R role : kAllRoles) {
    p.quota_rules[role_index(role)] = QuotaRule::min_of(2);
    p.informativeness_rules[role_index(role)] = InformativenessRule::ConstantWeight;
  }
  p.quota_rules[role_index(R::FinalJudgement)] = QuotaRule::full();
  p.quota_rules[role_index(R::Issue)] = QuotaRule::full();
  p.quota_rules[role_index(R::RulingByLowerCourt)] = QuotaRule::none();
  p.informativeness_rules[role_index(R::Fact)] = InformativenessRule::InversePosition;
  p.informativeness_rules[role_index(R::Statute)] = InformativenessRule::StatuteFlag;
  p.informativeness_rules[role_index(R::Precedent)] = InformativenessRule::PrecedentFlag;
  p.informativeness_rules[role_index(R::Ratio)] = InformativenessRule::PositionTimesCitation;
  return p;
}

std::array<double, kRoleCount> weights_from(double fact, double issue, double rlc, double precedent,
                                            double statute, double argument, double ratio,
                                            double final_judgement) {
  return {fact, issue, rlc, precedent, statute, argument, ratio, final_judgement};
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

bool parse_bool(const std::string& v, int line) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ProfileError("line " + std::to_string(line) + ": expected a boolean, got '" + v + "'");
}

double parse_number(const std::string& v, int line) {
  try {
    std::size_t used = 0;
    double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ProfileError("line " + std::to_string(line) + ": expected a number, got '" + v + "'");
  }
}

QuotaRule parse_quota(const std::string& v, int line) {
  if (v == "full") return QuotaRule::full();
  if (v == "none") return QuotaRule::none();
  if (v.rfind("min:", 0) == 0) {
    double c = parse_number(v.substr(4), line);
    if (c < 0 || c != static_cast<int>(c))
      throw ProfileError("line " + std::to_string(line) + ": quota cap must be a non-negative integer");
    return QuotaRule::min_of(static_cast<int>(c));
  }
  throw ProfileError("line " + std::to_string(line) + ": unknown quota rule '" + v + "'");
}

std::string quota_text(const QuotaRule& q) {
  switch (q.kind) {
    case QuotaKind::FullSegment: return "full";
    case QuotaKind::MinOf: return "min:" + std::to_string(q.cap);
    case QuotaKind::None: return "none";
  }
  return "none";
}

InformativenessRule parse_rule(const std::string& v, int line) {
  for (const auto& [rule, name] : kRuleNames)
    if (v == name) return rule;
  throw ProfileError("line " + std::to_string(line) + ": unknown informativeness rule '" + v + "'");
}

std::string_view rule_text(InformativenessRule rule) {
  for (const auto& [r, name] : kRuleNames)
    if (r == rule) return name;
  return "zero";
}

}  // namespace

GuidelineProfile india_profile() {
  return india_shape("india", weights_from(32, 64, 0, 8, 8, 2, 8, 128));
}

GuidelineProfile india_linear_profile() {
  return india_shape("india-linear", weights_from(5, 6, 0, 3, 3, 1, 3, 7));
}

GuidelineProfile resolve_profile(const std::string& name_or_path) {
  if (name_or_path == "india") return india_profile();
  if (name_or_path == "india-linear") return india_linear_profile();
  return load_profile(name_or_path);
}

GuidelineProfile parse_profile(std::istream& in) {
  GuidelineProfile p = india_profile();
  p.name = "custom";
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::string text = trim(raw);
    if (text.empty()) continue;
    auto eq = text.find('=');
    if (eq == std::string::npos)
      throw ProfileError("line " + std::to_string(line) + ": expected 'key = value'");
    std::string key = lower(trim(text.substr(0, eq)));
    std::string value = trim(text.substr(eq + 1));
    if (key == "name") {
      p.name = value;
      continue;
    }
    value = lower(value);
    if (key == "merge_precedent_ratio") {
      p.merge_precedent_ratio = parse_bool(value, line);
    } else if (key == "normalize_ratio_position") {
      p.normalize_ratio_position = parse_bool(value, line);
    } else if (key.rfind("score.", 0) == 0) {
      std::string kind = key.substr(6);
      double s = parse_number(value, line);
      if (s < 0 || s != static_cast<int>(s))
        throw ProfileError("line " + std::to_string(line) + ": scores must be non-negative integers");
      if (kind == "statute_mention") p.content_scores.statute = static_cast<int>(s);
      else if (kind == "legal_keyword") p.content_scores.keyword = static_cast<int>(s);
      else if (kind == "noun_phrase") p.content_scores.noun_phrase = static_cast<int>(s);
      else throw ProfileError("line " + std::to_string(line) + ": unknown content kind '" + kind + "'");
    } else {
      auto dot = key.find('.');
      if (dot == std::string::npos)
        throw ProfileError("line " + std::to_string(line) + ": unknown key '" + key + "'");
      std::string group = key.substr(0, dot);
      RhetoricalRole role;
      try {
        role = parse_role(key.substr(dot + 1));
      } catch (const UnknownRole& e) {
        throw ProfileError("line " + std::to_string(line) + ": " + e.what());
      }
      if (group == "weight") {
        double w = parse_number(value, line);
        if (w < 0) throw ProfileError("line " + std::to_string(line) + ": weights must be >= 0");
        p.segment_weights[role_index(role)] = w;
      } else if (group == "quota") {
        p.quota_rules[role_index(role)] = parse_quota(value, line);
      } else if (group == "informativeness") {
        p.informativeness_rules[role_index(role)] = parse_rule(value, line);
      } else {
        throw ProfileError("line " + std::to_string(line) + ": unknown key '" + key + "'");
      }
    }
  }
  return p;
}

GuidelineProfile load_profile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ProfileError("cannot read profile '" + path + "'");
  return parse_profile(in);
}

void write_profile(const GuidelineProfile& p, std::ostream& out) {
  out << "name = " << p.name << '\n';
  for (R role : kAllRoles) {
    const auto k = role_index(role);
    out << "weight." << role_name(role) << " = " << p.segment_weights[k] << '\n';
    out << "quota." << role_name(role) << " = " << quota_text(p.quota_rules[k]) << '\n';
    out << "informativeness." << role_name(role) << " = " << rule_text(p.informativeness_rules[k]) << '\n';
  }
  out << "score.statute_mention = " << p.content_scores.statute << '\n';
  out << "score.legal_keyword = " << p.content_scores.keyword << '\n';
  out << "score.noun_phrase = " << p.content_scores.noun_phrase << '\n';
  out << "merge_precedent_ratio = " << (p.merge_precedent_ratio ? "true" : "false") << '\n';
  out << "normalize_ratio_position = " << (p.normalize_ratio_position ? "true" : "false") << '\n';
}

double segment_weight(RhetoricalRole role, const GuidelineProfile& profile) {
  return profile.weight(role);
}

int min_sentences(RhetoricalRole role, int segment_size, const GuidelineProfile& profile) {
  const QuotaRule& rule = profile.quota_rules[role_index(role)];
  switch (rule.kind) {
    case QuotaKind::FullSegment: return segment_size;
    case QuotaKind::MinOf: return std::min(rule.cap, segment_size);
    case QuotaKind::None: return 0;
  }
  return 0;
}

double informativeness(const Sentence& sentence, bool statute, bool precedent,
                       const GuidelineProfile& profile, std::size_t document_size) {
  const double w = profile.weight(sentence.role);
  const double position = static_cast<double>(sentence.position);
  const double cited = (statute || precedent) ? 1.0 : 0.0;
  switch (profile.informativeness_rules[role_index(sentence.role)]) {
    case InformativenessRule::InversePosition:
      return w * (1.0 / position);
    case InformativenessRule::StatuteFlag:
      return statute ? w : 0.0;
    case InformativenessRule::PrecedentFlag:
      return precedent ? w : 0.0;
    case InformativenessRule::PositionTimesCitation: {
      double scale = position;
      if (profile.normalize_ratio_position && document_size > 0)
        scale = position / static_cast<double>(document_size);
      return w * scale * cited;
    }
    case InformativenessRule::ConstantWeight:
      return w;
    case InformativenessRule::Zero:
      return 0.0;
  }
  return 0.0;
}

}  // namespace delsumm
