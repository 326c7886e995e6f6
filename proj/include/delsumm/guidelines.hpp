#pragma once

#include <array>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "delsumm/content_words.hpp"
#include "delsumm/corpus.hpp"

namespace delsumm {

enum class QuotaKind { FullSegment, MinOf, None };

struct QuotaRule {
  QuotaKind kind = QuotaKind::None;
  int cap = 0;  // only for MinOf

  static QuotaRule full() { return {QuotaKind::FullSegment, 0}; }
  static QuotaRule min_of(int c) { return {QuotaKind::MinOf, c}; }
  static QuotaRule none() { return {QuotaKind::None, 0}; }
};

enum class InformativenessRule {
  InversePosition,        // Weight / position
  StatuteFlag,            // Weight * a
  PrecedentFlag,          // Weight * p
  PositionTimesCitation,  // Weight * position * (a OR p)
  ConstantWeight,         // Weight
  Zero,
};

// Full parameterization of the expert guidelines for one jurisdiction.
struct GuidelineProfile {
  std::string name;
  std::array<double, kRoleCount> segment_weights{};
  std::array<QuotaRule, kRoleCount> quota_rules{};
  std::array<InformativenessRule, kRoleCount> informativeness_rules{};
  ContentScores content_scores;
  // Precedent and Ratio are scored as one bucket in segment-wise evaluation.
  bool merge_precedent_ratio = true;
  // Replaces position by position/n in the Ratio formula.
  bool normalize_ratio_position = false;

  double weight(RhetoricalRole role) const { return segment_weights[role_index(role)]; }
};

class ProfileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exponentially decreasing weights (2^7 ... 2^1), full Final judgement and
// Issue, at least two sentences of every other segment.
GuidelineProfile india_profile();

// Same shape with linearly decreasing weights 7, 6, 5, 3, 1.
GuidelineProfile india_linear_profile();

// "india" or "india-linear"; anything else is read as a profile file path.
GuidelineProfile resolve_profile(const std::string& name_or_path);

// Key-value profile format, one `key = value` per line, '#' comments:
//
//   name = india
//   weight.final_judgement = 128
//   quota.issue = full            # full | min:<c> | none
//   informativeness.fact = inverse_position
//   score.statute_mention = 5
//   merge_precedent_ratio = true
//   normalize_ratio_position = false
//
// Keys not present keep the values of the india profile.
GuidelineProfile parse_profile(std::istream& in);
GuidelineProfile load_profile(const std::string& path);
void write_profile(const GuidelineProfile& profile, std::ostream& out);

double segment_weight(RhetoricalRole role, const GuidelineProfile& profile);

// NOS_k for a segment of the given size.
int min_sentences(RhetoricalRole role, int segment_size, const GuidelineProfile& profile);

// I(i). `document_size` is only consulted when normalize_ratio_position is on.
double informativeness(const Sentence& sentence, bool statute, bool precedent,
                       const GuidelineProfile& profile, std::size_t document_size = 0);

}  // namespace delsumm
