#include "delsumm/ilp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "delsumm/simplex.hpp"

namespace delsumm {

namespace {

constexpr double kTolerance = 1e-9;

double tolerance_for(double value) { return kTolerance * std::max(1.0, std::abs(value)); }

using Clock = std::chrono::steady_clock;

// Branch-and-bound state: -1 free, 0 or 1 fixed.
using Fixing = std::vector<std::int8_t>;

struct OpenNode {
  double bound;
  std::size_t seq;
  Fixing fixing;
};

struct OpenNodeOrder {
  bool operator()(const OpenNode& a, const OpenNode& b) const {
    if (a.bound != b.bound) return a.bound < b.bound;
    return a.seq > b.seq;
  }
};

// Marginal gain of adding sentence i given the currently covered words.
double marginal_gain(const IlpProblem& p, const std::vector<std::vector<std::size_t>>& content,
                     const std::vector<bool>& covered, std::size_t i) {
  double gain = p.sentence_value[i];
  for (std::size_t j : content[i])
    if (!covered[j]) gain += p.word_score[j];
  return gain;
}

// true when gain_a / len_a strictly beats gain_b / len_b.
bool denser(double gain_a, int len_a, double gain_b, int len_b) {
  const double lhs = gain_a * static_cast<double>(len_b);
  const double rhs = gain_b * static_cast<double>(len_a);
  if (len_a == 0 && len_b == 0) return gain_a > gain_b + kTolerance;
  return lhs > rhs + tolerance_for(std::max(std::abs(lhs), std::abs(rhs)));
}

std::vector<std::vector<std::size_t>> content_of(const IlpProblem& p) {
  std::vector<std::vector<std::size_t>> content(p.sentence_count());
  for (const auto& [i, j] : p.couplings) content[i].push_back(j);
  for (auto& c : content) {
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
  }
  return content;
}

class BranchAndBound {
 public:
  BranchAndBound(const IlpProblem& p, const SolverOptions& opt) : p_(p), opt_(opt) {
    const std::size_t n = p.sentence_count();
    folded_value_ = p.sentence_value;
    // A word covered by a single sentence is worth exactly its score to that
    // sentence, so fold it into the sentence coefficient.
    for (std::size_t j = 0; j < p.word_count(); ++j) {
      if (p.word_score[j] <= 0.0) continue;
      if (p.covers[j].size() == 1) {
        folded_value_[p.covers[j].front()] += p.word_score[j];
      } else if (p.covers[j].size() > 1) {
        shared_words_.push_back(j);
      }
    }
    quota_of_.assign(n, -1);
    for (std::size_t q = 0; q < p.quotas.size(); ++q)
      for (std::size_t i : p.quotas[q].members) quota_of_[i] = static_cast<int>(q);
  }

  IlpSolution run(IlpSolution incumbent) {
    const auto start = Clock::now();
    best_ = std::move(incumbent);
    best_.status = IlpStatus::Optimal;

    std::priority_queue<OpenNode, std::vector<OpenNode>, OpenNodeOrder> open;
    std::size_t seq = 0;
    bool exhausted = true;

    Fixing dive(p_.sentence_count(), -1);
    bool diving = true;

    while (true) {
      if (!diving) {
        if (open.empty()) break;
        OpenNode node = open.top();
        open.pop();
        if (node.bound <= best_.objective + tolerance_for(best_.objective)) continue;
        dive = std::move(node.fixing);
        diving = true;
      }

      if (nodes_ >= opt_.node_budget ||
          std::chrono::duration<double>(Clock::now() - start) >= opt_.time_budget) {
        exhausted = false;
        break;
      }
      ++nodes_;

      if (!quick_feasible(dive)) {
        diving = false;
        continue;
      }
      const auto relaxation = relax(dive);
      if (relaxation.status == lp::LpStatus::Infeasible) {
        diving = false;
        continue;
      }
      const bool have_values = relaxation.status == lp::LpStatus::Optimal;
      const double bound = have_values ? relaxation.objective : lp::kInfinity;
      if (bound <= best_.objective + tolerance_for(best_.objective)) {
        diving = false;
        continue;
      }

      std::size_t branch = p_.sentence_count();
      double best_frac = -1.0;
      for (std::size_t i = 0; i < p_.sentence_count(); ++i) {
        if (dive[i] != -1) continue;
        double frac = 0.0;
        if (have_values) {
          const double v = relaxation.values[i];
          frac = std::min(v, 1.0 - v);
          if (frac <= 1e-9) continue;
        }
        if (frac > best_frac + 1e-12) {
          best_frac = frac;
          branch = i;
          if (!have_values) break;
        }
      }

      if (branch == p_.sentence_count()) {
        if (have_values) consider(dive, relaxation.values);
        diving = false;
        continue;
      }

      const double value = have_values ? relaxation.values[branch] : 1.0;
      const std::int8_t first = value >= 0.5 ? 1 : 0;
      Fixing other = dive;
      other[branch] = static_cast<std::int8_t>(1 - first);
      open.push({bound, seq++, std::move(other)});
      dive[branch] = first;
    }

    best_.status = exhausted ? IlpStatus::Optimal : IlpStatus::FeasibleTimeout;
    best_.nodes_explored = nodes_;
    best_.wall_time = Clock::now() - start;
    return best_;
  }

 private:
  // Budget and quota checks that need no LP.
  bool quick_feasible(const Fixing& fix) const {
    long long used = 0;
    std::vector<int> chosen(p_.quotas.size(), 0);
    for (std::size_t i = 0; i < fix.size(); ++i) {
      if (fix[i] != 1) continue;
      used += p_.lengths[i];
      if (quota_of_[i] >= 0) ++chosen[static_cast<std::size_t>(quota_of_[i])];
    }
    for (std::size_t q = 0; q < p_.quotas.size(); ++q) {
      int need = p_.quotas[q].min_count - chosen[q];
      if (need <= 0) continue;
      std::vector<int> free_lengths;
      for (std::size_t i : p_.quotas[q].members)
        if (fix[i] == -1) free_lengths.push_back(p_.lengths[i]);
      if (static_cast<int>(free_lengths.size()) < need) return false;
      std::partial_sort(free_lengths.begin(), free_lengths.begin() + need, free_lengths.end());
      used += std::accumulate(free_lengths.begin(), free_lengths.begin() + need, 0LL);
    }
    return used <= p_.budget;
  }

  lp::LpResult relax(const Fixing& fix) const {
    lp::LinearProgram lp;
    const std::size_t n = p_.sentence_count();
    for (std::size_t i = 0; i < n; ++i) {
      const double lo = fix[i] == 1 ? 1.0 : 0.0;
      const double hi = fix[i] == 0 ? 0.0 : 1.0;
      lp.add_variable(folded_value_[i], lo, hi);
    }
    std::vector<std::pair<std::size_t, double>> budget_row;
    for (std::size_t i = 0; i < n; ++i)
      if (fix[i] != 0 && p_.lengths[i] != 0) budget_row.emplace_back(i, p_.lengths[i]);
    lp.add_row(std::move(budget_row), lp::RowSense::LessEqual, p_.budget);

    double constant = 0.0;
    for (std::size_t j : shared_words_) {
      bool forced = false;
      std::vector<std::pair<std::size_t, double>> row;
      for (std::size_t i : p_.covers[j]) {
        if (fix[i] == 1) forced = true;
        if (fix[i] == -1) row.emplace_back(i, -1.0);
      }
      if (forced) {
        constant += p_.word_score[j];
        continue;
      }
      if (row.empty()) continue;
      const std::size_t y = lp.add_variable(p_.word_score[j], 0.0, 1.0);
      row.emplace_back(y, 1.0);
      lp.add_row(std::move(row), lp::RowSense::LessEqual, 0.0);
    }
    for (const auto& quota : p_.quotas) {
      if (quota.min_count <= 0) continue;
      std::vector<std::pair<std::size_t, double>> row;
      for (std::size_t i : quota.members)
        if (fix[i] != 0) row.emplace_back(i, 1.0);
      lp.add_row(std::move(row), lp::RowSense::GreaterEqual, quota.min_count);
    }
    auto result = lp::solve_lp(lp);
    if (result.status == lp::LpStatus::Optimal) result.objective += constant;
    return result;
  }

  void consider(const Fixing& fix, const std::vector<double>& values) {
    std::vector<std::uint8_t> x(p_.sentence_count(), 0);
    for (std::size_t i = 0; i < x.size(); ++i)
      x[i] = fix[i] == 1 || (fix[i] == -1 && values[i] > 0.5) ? 1 : 0;
    long long used = 0;
    for (std::size_t i = 0; i < x.size(); ++i) used += x[i] ? p_.lengths[i] : 0;
    if (used > p_.budget) return;
    for (const auto& quota : p_.quotas) {
      int count = 0;
      for (std::size_t i : quota.members) count += x[i];
      if (count < quota.min_count) return;
    }
    const double value = selection_value(p_, x);
    if (value > best_.objective + tolerance_for(best_.objective)) {
      best_.x = std::move(x);
      best_.y = implied_words(p_, best_.x);
      best_.objective = value;
    }
  }

  const IlpProblem& p_;
  const SolverOptions& opt_;
  std::vector<double> folded_value_;
  std::vector<std::size_t> shared_words_;
  std::vector<int> quota_of_;
  IlpSolution best_;
  std::size_t nodes_ = 0;
};

IlpSolution infeasible_solution(const IlpProblem& p) {
  IlpSolution s;
  s.x.assign(p.sentence_count(), 0);
  s.y.assign(p.word_count(), 0);
  s.objective = 0.0;
  s.status = IlpStatus::Infeasible;
  return s;
}

std::string lp_number(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

}  // namespace

std::string_view ilp_status_name(IlpStatus status) {
  switch (status) {
    case IlpStatus::Optimal: return "Optimal";
    case IlpStatus::FeasibleTimeout: return "FeasibleTimeout";
    case IlpStatus::Infeasible: return "Infeasible";
  }
  return "Unknown";
}

void IlpProblem::set_content(const std::vector<std::vector<std::size_t>>& per_sentence) {
  couplings.clear();
  covers.assign(word_score.size(), {});
  for (std::size_t i = 0; i < per_sentence.size(); ++i) {
    std::vector<std::size_t> words = per_sentence[i];
    std::sort(words.begin(), words.end());
    words.erase(std::unique(words.begin(), words.end()), words.end());
    for (std::size_t j : words) {
      couplings.emplace_back(i, j);
      covers.at(j).push_back(i);
    }
  }
}

void IlpProblem::validate() const {
  const std::size_t n = sentence_count();
  const std::size_t m = word_count();
  if (lengths.size() != n) throw std::invalid_argument("lengths do not match sentence count");
  if (covers.size() != m) throw std::invalid_argument("covers do not match word count");
  if (budget < 0) throw std::invalid_argument("budget must be non-negative");
  for (double v : sentence_value)
    if (!(v >= 0.0) || !std::isfinite(v)) throw std::invalid_argument("sentence values must be finite and >= 0");
  for (double v : word_score)
    if (!(v >= 0.0) || !std::isfinite(v)) throw std::invalid_argument("word scores must be finite and >= 0");
  for (int len : lengths)
    if (len < 0) throw std::invalid_argument("sentence lengths must be >= 0");
  std::vector<std::vector<std::size_t>> from_couplings(m);
  for (const auto& [i, j] : couplings) {
    if (i >= n || j >= m) throw std::invalid_argument("coupling out of range");
    from_couplings[j].push_back(i);
  }
  for (std::size_t j = 0; j < m; ++j) {
    auto a = from_couplings[j];
    auto b = covers[j];
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) throw std::invalid_argument("covers are not the inverse of couplings");
  }
  std::vector<bool> in_quota(n, false);
  for (const auto& q : quotas) {
    if (q.min_count < 0 || q.min_count > static_cast<int>(q.members.size()))
      throw std::invalid_argument("quota exceeds its segment size");
    for (std::size_t i : q.members) {
      if (i >= n) throw std::invalid_argument("quota member out of range");
      if (in_quota[i]) throw std::invalid_argument("quota segments overlap");
      in_quota[i] = true;
    }
  }
}

IlpProblem build_problem(const LabeledDocument& doc, const ContentIndex& index,
                         const GuidelineProfile& profile, int budget) {
  if (budget < 0) throw std::invalid_argument("budget must be non-negative");
  if (index.per_sentence.size() != doc.size())
    throw std::invalid_argument("content index was built for a different document");
  IlpProblem p;
  const std::size_t n = doc.size();
  p.budget = budget;
  p.sentence_value.resize(n);
  p.lengths.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Sentence& s = doc.sentences[i];
    p.sentence_value[i] = informativeness(s, index.statute_flag[i], index.precedent_flag[i], profile, n);
    p.lengths[i] = s.word_count;
  }
  p.word_score.resize(index.word_count());
  for (std::size_t j = 0; j < index.word_count(); ++j)
    p.word_score[j] = profile.content_scores.of(index.words[j].kind);
  p.set_content(index.per_sentence);

  for (RhetoricalRole role : kAllRoles) {
    auto members = doc.segment(role);
    if (members.empty()) continue;
    const int nos = min_sentences(role, static_cast<int>(members.size()), profile);
    if (nos <= 0) continue;
    p.quotas.push_back({role, std::move(members), nos});
  }
  return p;
}

long long quota_minimal_length(const std::vector<SegmentQuota>& quotas, const std::vector<int>& lengths) {
  long long total = 0;
  for (const auto& q : quotas) {
    if (q.min_count <= 0) continue;
    std::vector<int> ls;
    for (std::size_t i : q.members) ls.push_back(lengths.at(i));
    std::sort(ls.begin(), ls.end());
    const auto take = std::min<std::size_t>(static_cast<std::size_t>(q.min_count), ls.size());
    total += std::accumulate(ls.begin(), ls.begin() + static_cast<std::ptrdiff_t>(take), 0LL);
  }
  return total;
}

std::vector<std::uint8_t> implied_words(const IlpProblem& problem, const std::vector<std::uint8_t>& x) {
  std::vector<std::uint8_t> y(problem.word_count(), 0);
  for (const auto& [i, j] : problem.couplings)
    if (x[i]) y[j] = 1;
  return y;
}

double selection_value(const IlpProblem& problem, const std::vector<std::uint8_t>& x) {
  double value = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i]) value += problem.sentence_value[i];
  const auto y = implied_words(problem, x);
  for (std::size_t j = 0; j < y.size(); ++j)
    if (y[j]) value += problem.word_score[j];
  return value;
}

IlpSolution solve_greedy(const IlpProblem& p) {
  const auto start = Clock::now();
  p.validate();
  if (quota_minimal_length(p.quotas, p.lengths) > p.budget) return infeasible_solution(p);

  const std::size_t n = p.sentence_count();
  const auto content = content_of(p);
  std::vector<bool> covered(p.word_count(), false);
  std::vector<std::uint8_t> x(n, 0);
  long long used = 0;

  auto take = [&](std::size_t i) {
    x[i] = 1;
    used += p.lengths[i];
    for (std::size_t j : content[i]) covered[j] = true;
  };

  // Phase 1: quotas. A candidate is admissible only if every outstanding quota
  // can still be met by its shortest unselected members afterwards.
  std::vector<int> need(p.quotas.size());
  for (std::size_t q = 0; q < p.quotas.size(); ++q) need[q] = std::max(0, p.quotas[q].min_count);
  auto outstanding_length = [&](std::size_t skip) {
    long long total = 0;
    for (std::size_t q = 0; q < p.quotas.size(); ++q) {
      int r = need[q];
      std::vector<int> ls;
      for (std::size_t i : p.quotas[q].members) {
        if (i == skip) {
          --r;
          continue;
        }
        if (!x[i]) ls.push_back(p.lengths[i]);
      }
      if (r <= 0) continue;
      std::sort(ls.begin(), ls.end());
      for (int k = 0; k < r && k < static_cast<int>(ls.size()); ++k) total += ls[static_cast<std::size_t>(k)];
    }
    return total;
  };

  // scanned in index order so equal densities keep the lowest index
  std::vector<std::vector<std::size_t>> members(p.quotas.size());
  for (std::size_t q = 0; q < p.quotas.size(); ++q) {
    members[q] = p.quotas[q].members;
    std::sort(members[q].begin(), members[q].end());
  }

  for (std::size_t q = 0; q < p.quotas.size(); ++q) {
    while (need[q] > 0) {
      std::size_t pick = n;
      double pick_gain = 0.0;
      for (std::size_t i : members[q]) {
        if (x[i]) continue;
        if (used + p.lengths[i] + outstanding_length(i) > p.budget) continue;
        const double g = marginal_gain(p, content, covered, i);
        if (pick == n || denser(g, p.lengths[i], pick_gain, p.lengths[pick])) {
          pick = i;
          pick_gain = g;
        }
      }
      if (pick == n) return infeasible_solution(p);
      take(pick);
      --need[q];
    }
  }

  // Phase 2: density fill.
  while (true) {
    std::size_t pick = n;
    double pick_gain = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i] || used + p.lengths[i] > p.budget) continue;
      const double g = marginal_gain(p, content, covered, i);
      if (g <= kTolerance) continue;
      if (pick == n || denser(g, p.lengths[i], pick_gain, p.lengths[pick])) {
        pick = i;
        pick_gain = g;
      }
    }
    if (pick == n) break;
    take(pick);
  }

  IlpSolution s;
  s.x = std::move(x);
  s.y = implied_words(p, s.x);
  s.objective = selection_value(p, s.x);
  s.status = IlpStatus::Optimal;
  s.wall_time = Clock::now() - start;
  return s;
}

IlpSolution solve_exact(const IlpProblem& problem, const SolverOptions& options) {
  problem.validate();
  if (quota_minimal_length(problem.quotas, problem.lengths) > problem.budget)
    return infeasible_solution(problem);
  IlpSolution incumbent = solve_greedy(problem);
  BranchAndBound search(problem, options);
  return search.run(std::move(incumbent));
}

std::vector<Violation> verify_solution(const IlpProblem& p, const IlpSolution& s) {
  std::vector<Violation> out;
  using K = Violation::Kind;
  const std::size_t n = p.sentence_count();
  const std::size_t m = p.word_count();
  if (s.x.size() != n || s.y.size() != m) {
    out.push_back({K::Shape, s.x.size(), s.y.size(), "assignment size does not match the problem"});
    return out;
  }
  for (std::size_t i = 0; i < n; ++i)
    if (s.x[i] > 1) out.push_back({K::NonBinary, i, 0, "x_" + std::to_string(i) + " is not binary"});
  for (std::size_t j = 0; j < m; ++j)
    if (s.y[j] > 1) out.push_back({K::NonBinary, n + j, 0, "y_" + std::to_string(j) + " is not binary"});

  long long length = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (s.x[i]) length += p.lengths[i];
  if (length > p.budget)
    out.push_back({K::Budget, static_cast<std::size_t>(length), static_cast<std::size_t>(p.budget),
                   "length " + std::to_string(length) + " exceeds budget " + std::to_string(p.budget)});

  for (const auto& [i, j] : p.couplings)
    if (s.x[i] && !s.y[j])
      out.push_back({K::Coupling, i, j,
                     "sentence " + std::to_string(i) + " selected without content word " + std::to_string(j)});

  for (std::size_t j = 0; j < m; ++j) {
    if (!s.y[j]) continue;
    bool covered = false;
    for (std::size_t i : p.covers[j]) covered = covered || s.x[i];
    if (!covered)
      out.push_back({K::Cover, j, 0, "content word " + std::to_string(j) + " selected without a covering sentence"});
  }

  for (std::size_t q = 0; q < p.quotas.size(); ++q) {
    int count = 0;
    for (std::size_t i : p.quotas[q].members) count += s.x[i] ? 1 : 0;
    if (count < p.quotas[q].min_count)
      out.push_back({K::Quota, q, static_cast<std::size_t>(count),
                     std::string("segment ") + std::string(role_name(p.quotas[q].role)) + " has " +
                         std::to_string(count) + " of " + std::to_string(p.quotas[q].min_count) +
                         " required sentences"});
  }

  double objective = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    if (s.x[i]) objective += p.sentence_value[i];
  for (std::size_t j = 0; j < m; ++j)
    if (s.y[j]) objective += p.word_score[j];
  if (std::abs(objective - s.objective) > tolerance_for(objective))
    out.push_back({K::Objective, 0, 0,
                   "stored objective " + lp_number(s.objective) + " differs from " + lp_number(objective)});
  return out;
}

void write_lp_format(const IlpProblem& p, std::ostream& out, const std::string& title) {
  if (!title.empty()) out << "\\ " << title << '\n';
  out << "Maximize\n obj:";
  bool first = true;
  auto term = [&](double coef, const std::string& var) {
    out << (first ? " " : " + ") << lp_number(coef) << ' ' << var;
    first = false;
  };
  for (std::size_t i = 0; i < p.sentence_count(); ++i) term(p.sentence_value[i], "x" + std::to_string(i));
  for (std::size_t j = 0; j < p.word_count(); ++j) term(p.word_score[j], "y" + std::to_string(j));
  if (first) out << " 0 x0";
  out << "\nSubject To\n budget:";
  first = true;
  for (std::size_t i = 0; i < p.sentence_count(); ++i) term(p.lengths[i], "x" + std::to_string(i));
  if (first) out << " 0 x0";
  out << " <= " << p.budget << '\n';
  for (const auto& [i, j] : p.couplings)
    out << " couple_" << i << '_' << j << ": y" << j << " - x" << i << " >= 0\n";
  for (std::size_t j = 0; j < p.word_count(); ++j) {
    out << " cover_" << j << ":";
    for (std::size_t i : p.covers[j]) out << " + x" << i;
    out << " - y" << j << " >= 0\n";
  }
  for (const auto& q : p.quotas) {
    out << " quota_" << role_name(q.role) << ":";
    for (std::size_t i : q.members) out << " + x" << i;
    out << " >= " << q.min_count << '\n';
  }
  out << "Binary\n";
  for (std::size_t i = 0; i < p.sentence_count(); ++i) out << " x" << i << '\n';
  for (std::size_t j = 0; j < p.word_count(); ++j) out << " y" << j << '\n';
  out << "End\n";
}

}  // namespace delsumm
