#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "delsumm/corpus.hpp"
#include "delsumm/evaluation.hpp"
#include "delsumm/guidelines.hpp"
#include "delsumm/ilp.hpp"

namespace delsumm {

enum class NoisePolicy { UniformFlip };

struct NoiseSpec {
  double rate = 0.0;  // expected fraction of sentences whose role is replaced
  std::uint64_t seed = 0;
  NoisePolicy policy = NoisePolicy::UniformFlip;
};

// Seed of the per-document random stream, derived from (seed, doc_id) so the
// result does not depend on scheduling.
std::uint64_t document_seed(std::uint64_t seed, const std::string& doc_id);

// Each sentence independently, with probability `rate`, gets a role drawn
// uniformly from the seven other roles. Only roles change.
LabeledDocument perturb_labels(const LabeledDocument& doc, const NoiseSpec& spec);

struct RobustnessRow {
  std::string doc_id;
  double label_accuracy = 1.0;
  MetricRow gold;
  MetricRow noisy;
};

struct RobustnessReport {
  NoiseSpec spec;
  std::vector<RobustnessRow> rows;
  double mean_label_accuracy = 1.0;
  MetricRow mean_gold;
  MetricRow mean_noisy;
};

struct RobustnessOptions {
  std::optional<int> length_override;
  SolverOptions solver;
  std::size_t workers = 1;
};

// Summarizes every document with gold and with perturbed labels at the same
// target length and scores both against the references.
RobustnessReport robustness_report(const std::vector<LabeledDocument>& corpus, const ReferenceIndex& references,
                                   const GuidelineProfile& profile, const Lexicons& lexicons,
                                   const NoiseSpec& spec, const RobustnessOptions& options = {});

// doc_id, label_accuracy, rougeL_F_gold, rougeL_F_noisy, delta; last row is the mean.
std::string robustness_table(const RobustnessReport& report);
std::string robustness_json(const RobustnessReport& report);

}  // namespace delsumm
