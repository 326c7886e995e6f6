#include "delsumm/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace delsumm::lp {

std::size_t LinearProgram::add_variable(double cost, double lo, double hi) {
  if (!std::isfinite(lo)) throw std::invalid_argument("lower bounds must be finite");
  if (hi < lo) throw std::invalid_argument("upper bound below lower bound");
  objective.push_back(cost);
  lower.push_back(lo);
  upper.push_back(hi);
  return objective.size() - 1;
}

void LinearProgram::add_row(std::vector<std::pair<std::size_t, double>> terms, RowSense sense,
                            double rhs) {
  for (const auto& [col, coef] : terms) {
    (void)coef;
    if (col >= objective.size()) throw std::out_of_range("row references unknown variable");
  }
  rows.push_back({std::move(terms), sense, rhs});
}

namespace {

enum class VarState { Basic, AtLower, AtUpper };

constexpr std::size_t kDegenerateLimit = 50;

class Tableau {
 public:
  Tableau(const LinearProgram& lp, const LpOptions& opt) : opt_(opt) {
    structural_ = lp.variable_count();
    rows_ = lp.rows.size();

    // Artificial columns only for rows whose slack would start negative.
    std::vector<double> rhs(rows_);
    std::vector<std::vector<double>> dense(rows_, std::vector<double>(structural_, 0.0));
    std::vector<bool> needs_artificial(rows_, false);
    for (std::size_t r = 0; r < rows_; ++r) {
      const auto& row = lp.rows[r];
      const double sign = row.sense == RowSense::GreaterEqual ? -1.0 : 1.0;
      for (const auto& [col, coef] : row.terms) dense[r][col] += sign * coef;
      double residual = sign * row.rhs;
      for (std::size_t j = 0; j < structural_; ++j) residual -= dense[r][j] * lp.lower[j];
      rhs[r] = residual;
      if (residual < 0.0) {
        needs_artificial[r] = true;
        ++artificial_count_;
      }
    }

    cols_ = structural_ + rows_ + artificial_count_;
    lower_.assign(cols_, 0.0);
    upper_.assign(cols_, kInfinity);
    state_.assign(cols_, VarState::AtLower);
    cost_.assign(cols_, 0.0);
    for (std::size_t j = 0; j < structural_; ++j) {
      lower_[j] = lp.lower[j];
      upper_[j] = lp.upper[j];
      cost_[j] = lp.objective[j];
    }

    table_.assign(rows_ * cols_, 0.0);
    beta_.assign(rows_, 0.0);
    basis_.assign(rows_, 0);
    std::size_t next_artificial = structural_ + rows_;
    for (std::size_t r = 0; r < rows_; ++r) {
      double* t = row(r);
      const std::size_t slack = structural_ + r;
      if (!needs_artificial[r]) {
        for (std::size_t j = 0; j < structural_; ++j) t[j] = dense[r][j];
        t[slack] = 1.0;
        basis_[r] = slack;
        beta_[r] = rhs[r];
      } else {
        for (std::size_t j = 0; j < structural_; ++j) t[j] = -dense[r][j];
        t[slack] = -1.0;
        t[next_artificial] = 1.0;
        basis_[r] = next_artificial;
        beta_[r] = -rhs[r];
        ++next_artificial;
      }
      state_[basis_[r]] = VarState::Basic;
    }
    max_iterations_ = opt.max_iterations != 0 ? opt.max_iterations : 50 * (rows_ + cols_) + 100;
  }

  LpResult run() {
    if (artificial_count_ > 0) {
      std::vector<double> phase_one(cols_, 0.0);
      for (std::size_t j = structural_ + rows_; j < cols_; ++j) phase_one[j] = -1.0;
      auto status = optimize(phase_one, /*allow_artificial=*/true);
      if (status != LpStatus::Optimal) return finish(status);
      double infeasibility = 0.0;
      for (std::size_t r = 0; r < rows_; ++r)
        if (is_artificial(basis_[r])) infeasibility += beta_[r];
      if (infeasibility > opt_.feasibility_tolerance) return finish(LpStatus::Infeasible);
      for (std::size_t j = structural_ + rows_; j < cols_; ++j) upper_[j] = 0.0;
      for (std::size_t r = 0; r < rows_; ++r)
        if (is_artificial(basis_[r])) beta_[r] = 0.0;
    }
    return finish(optimize(cost_, /*allow_artificial=*/false));
  }

 private:
  double* row(std::size_t r) { return table_.data() + r * cols_; }
  bool is_artificial(std::size_t j) const { return j >= structural_ + rows_; }

  double nonbasic_value(std::size_t j) const {
    return state_[j] == VarState::AtUpper ? upper_[j] : lower_[j];
  }

  void compute_reduced_costs(const std::vector<double>& cost) {
    reduced_ = cost;
    for (std::size_t r = 0; r < rows_; ++r) {
      const double cb = cost[basis_[r]];
      if (cb == 0.0) continue;
      const double* t = row(r);
      for (std::size_t j = 0; j < cols_; ++j) reduced_[j] -= cb * t[j];
    }
    for (std::size_t r = 0; r < rows_; ++r) reduced_[basis_[r]] = 0.0;
  }

  LpStatus optimize(const std::vector<double>& cost, bool allow_artificial) {
    compute_reduced_costs(cost);
    while (true) {
      if (iterations_ >= max_iterations_) return LpStatus::IterationLimit;

      // Largest improving reduced cost; after a run of degenerate pivots switch
      // to the smallest improving index (Bland) for the rest of the solve.
      const bool bland = degenerate_run_ >= kDegenerateLimit;
      std::size_t entering = cols_;
      double best = 0.0;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (state_[j] == VarState::Basic) continue;
        if (!allow_artificial && is_artificial(j)) continue;
        const double d = reduced_[j];
        double gain = 0.0;
        if (state_[j] == VarState::AtLower && d > opt_.optimality_tolerance && upper_[j] > lower_[j]) gain = d;
        if (state_[j] == VarState::AtUpper && d < -opt_.optimality_tolerance) gain = -d;
        if (gain <= 0.0) continue;
        if (bland) {
          entering = j;
          break;
        }
        if (gain > best) {
          best = gain;
          entering = j;
        }
      }
      if (entering == cols_) return LpStatus::Optimal;
      ++iterations_;

      const double dir = state_[entering] == VarState::AtLower ? 1.0 : -1.0;
      double step = kInfinity;
      std::size_t leave_row = rows_;
      for (std::size_t r = 0; r < rows_; ++r) {
        const double coef = dir * table_[r * cols_ + entering];
        const std::size_t b = basis_[r];
        double limit = kInfinity;
        if (coef > opt_.pivot_tolerance) {
          limit = (beta_[r] - lower_[b]) / coef;
        } else if (coef < -opt_.pivot_tolerance && std::isfinite(upper_[b])) {
          limit = (upper_[b] - beta_[r]) / -coef;
        } else {
          continue;
        }
        if (limit < 0.0) limit = 0.0;
        if (leave_row == rows_ || limit < step - 1e-12) {
          step = limit;
          leave_row = r;
        } else if (limit <= step + 1e-12 && b < basis_[leave_row]) {
          step = std::min(step, limit);
          leave_row = r;
        }
      }

      const double span = upper_[entering] - lower_[entering];
      if (span <= step) {
        // bound flip, basis unchanged
        if (!std::isfinite(span)) return LpStatus::Unbounded;
        for (std::size_t r = 0; r < rows_; ++r) beta_[r] -= dir * span * table_[r * cols_ + entering];
        state_[entering] = state_[entering] == VarState::AtLower ? VarState::AtUpper : VarState::AtLower;
        continue;
      }
      if (leave_row == rows_) return LpStatus::Unbounded;
      if (step <= 1e-12) {
        if (degenerate_run_ < kDegenerateLimit) ++degenerate_run_;
      } else if (degenerate_run_ < kDegenerateLimit) {
        degenerate_run_ = 0;
      }
      pivot(leave_row, entering, dir, step);
    }
  }

  void pivot(std::size_t p, std::size_t entering, double dir, double step) {
    const double entering_value = state_[entering] == VarState::AtLower ? lower_[entering] + step
                                                                        : upper_[entering] - step;
    for (std::size_t r = 0; r < rows_; ++r) beta_[r] -= dir * step * table_[r * cols_ + entering];

    const std::size_t leaving = basis_[p];
    const double leave_coef = dir * table_[p * cols_ + entering];
    state_[leaving] = leave_coef > 0.0 ? VarState::AtLower : VarState::AtUpper;

    double* prow = row(p);
    const double inv = 1.0 / prow[entering];
    for (std::size_t j = 0; j < cols_; ++j) prow[j] *= inv;
    prow[entering] = 1.0;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == p) continue;
      double* t = row(r);
      const double f = t[entering];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < cols_; ++j) t[j] -= f * prow[j];
      t[entering] = 0.0;
    }
    const double dj = reduced_[entering];
    if (dj != 0.0) {
      for (std::size_t j = 0; j < cols_; ++j) reduced_[j] -= dj * prow[j];
      reduced_[entering] = 0.0;
    }

    basis_[p] = entering;
    beta_[p] = entering_value;
    state_[entering] = VarState::Basic;
  }

  LpResult finish(LpStatus status) {
    LpResult result;
    result.status = status;
    result.iterations = iterations_;
    if (status != LpStatus::Optimal) return result;
    std::vector<double> value(cols_);
    for (std::size_t j = 0; j < cols_; ++j) value[j] = nonbasic_value(j);
    for (std::size_t r = 0; r < rows_; ++r) value[basis_[r]] = beta_[r];
    result.values.assign(value.begin(), value.begin() + static_cast<std::ptrdiff_t>(structural_));
    for (std::size_t j = 0; j < structural_; ++j) {
      // clamp round-off
      result.values[j] = std::clamp(result.values[j], lower_[j], upper_[j]);
      result.objective += cost_[j] * result.values[j];
    }
    return result;
  }

  const LpOptions& opt_;
  std::size_t structural_ = 0;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t artificial_count_ = 0;
  std::size_t iterations_ = 0;
  std::size_t max_iterations_ = 0;
  std::size_t degenerate_run_ = 0;
  std::vector<double> lower_, upper_, cost_, reduced_, beta_, table_;
  std::vector<std::size_t> basis_;
  std::vector<VarState> state_;
};

}  // namespace

LpResult solve_lp(const LinearProgram& program, const LpOptions& options) {
  if (program.lower.size() != program.objective.size() || program.upper.size() != program.objective.size())
    throw std::invalid_argument("bound vectors do not match variable count");
  Tableau tableau(program, options);
  return tableau.run();
}

}  // namespace delsumm::lp
