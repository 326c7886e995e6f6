#pragma once

#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

namespace delsumm::lp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class RowSense { LessEqual, GreaterEqual };

// maximize  c'x  subject to  rows,  lower <= x <= upper.
// Lower bounds must be finite; upper bounds may be kInfinity.
struct LinearProgram {
  struct Row {
    std::vector<std::pair<std::size_t, double>> terms;
    RowSense sense = RowSense::LessEqual;
    double rhs = 0.0;
  };

  std::vector<double> objective;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<Row> rows;

  std::size_t add_variable(double cost, double lo, double hi);
  void add_row(std::vector<std::pair<std::size_t, double>> terms, RowSense sense, double rhs);
  std::size_t variable_count() const { return objective.size(); }
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

struct LpResult {
  LpStatus status = LpStatus::IterationLimit;
  double objective = 0.0;
  std::vector<double> values;
  std::size_t iterations = 0;
};

struct LpOptions {
  double optimality_tolerance = 1e-9;
  double pivot_tolerance = 1e-9;
  double feasibility_tolerance = 1e-7;
  std::size_t max_iterations = 0;  // 0: 50 * (rows + columns)
};

// Two-phase bounded-variable primal simplex on a dense tableau. Pricing picks
// the largest reduced cost until pivots stall, then falls back to Bland's
// smallest-index rule, so it cannot cycle.
LpResult solve_lp(const LinearProgram& program, const LpOptions& options = {});

}  // namespace delsumm::lp
