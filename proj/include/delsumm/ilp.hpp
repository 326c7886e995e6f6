#pragma once

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "delsumm/content_words.hpp"
#include "delsumm/corpus.hpp"
#include "delsumm/guidelines.hpp"

namespace delsumm {

// At least `min_count` of `members` must be selected. Quota member
// sets of one problem are pairwise disjoint (segments partition a document).
struct SegmentQuota {
  RhetoricalRole role = RhetoricalRole::Fact;
  std::vector<std::size_t> members;
  int min_count = 0;
};

// 0/1 program over sentence variables x_i and content-word variables y_j:
//
//   max   sum_i I(i) x_i + sum_j Score(j) y_j
//   s.t.  sum_i L(i) x_i <= L
//         y_j >= x_i              for every (i, j) with j in C(i)
//         sum_{i in T_j} x_i >= y_j
//         sum_{i in S_k} x_i >= NOS_k
struct IlpProblem {
  std::vector<double> sentence_value;  // I(i)
  std::vector<double> word_score;      // Score(j)
  std::vector<int> lengths;            // L(i)
  int budget = 0;                      // L
  std::vector<std::pair<std::size_t, std::size_t>> couplings;  // (i, j)
  std::vector<std::vector<std::size_t>> covers;                // T_j
  std::vector<SegmentQuota> quotas;

  std::size_t sentence_count() const { return sentence_value.size(); }
  std::size_t word_count() const { return word_score.size(); }

  // Fills couplings and covers from per-sentence content sets; word_score must
  // already be sized.
  void set_content(const std::vector<std::vector<std::size_t>>& per_sentence);

  // Throws std::invalid_argument when a structural invariant is broken.
  void validate() const;
};

enum class IlpStatus { Optimal, FeasibleTimeout, Infeasible };

std::string_view ilp_status_name(IlpStatus status);

struct IlpSolution {
  std::vector<std::uint8_t> x;
  std::vector<std::uint8_t> y;
  double objective = 0.0;
  IlpStatus status = IlpStatus::Infeasible;
  std::size_t nodes_explored = 0;
  std::chrono::duration<double> wall_time{0.0};
};

struct SolverOptions {
  std::size_t node_budget = 1'000'000;
  std::chrono::duration<double> time_budget{30.0};
};

IlpProblem build_problem(const LabeledDocument& doc, const ContentIndex& index,
                         const GuidelineProfile& profile, int budget);

// Fewest words any quota-satisfying selection can have.
long long quota_minimal_length(const std::vector<SegmentQuota>& quotas, const std::vector<int>& lengths);

// y implied by x: y_j = 1 iff some selected sentence contains j.
std::vector<std::uint8_t> implied_words(const IlpProblem& problem, const std::vector<std::uint8_t>& x);

// Objective of x with its implied y.
double selection_value(const IlpProblem& problem, const std::vector<std::uint8_t>& x);

// Branch-and-bound over x with LP-relaxation bounds; y is never branched on.
IlpSolution solve_exact(const IlpProblem& problem, const SolverOptions& options = {});

// Quota-first, then density-greedy fill. Feasible whenever the problem is.
IlpSolution solve_greedy(const IlpProblem& problem);

struct Violation {
  enum class Kind { Shape, NonBinary, Budget, Coupling, Cover, Quota, Objective };
  Kind kind;
  std::size_t first = 0;
  std::size_t second = 0;
  std::string message;
};

// Re-checks every constraint and the objective arithmetic (tolerance 1e-9).
std::vector<Violation> verify_solution(const IlpProblem& problem, const IlpSolution& solution);

// CPLEX LP text format, for cross-checking with external solvers.
void write_lp_format(const IlpProblem& problem, std::ostream& out, const std::string& title = "");

}  // namespace delsumm
