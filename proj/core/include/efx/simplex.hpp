#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <utility>
#include <vector>

namespace efx {

// sum_t coeff_t * x_{var_t} <= rhs
struct LinearConstraint {
  std::vector<std::pair<std::size_t, double>> terms;
  double rhs = 0.0;
};

// minimize objective . x  subject to rows and lower <= x <= upper.
// Lower bounds must be finite; upper bounds may be +infinity.
struct LinearProgram {
  std::vector<double> objective;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<LinearConstraint> rows;

  std::size_t variables() const noexcept { return objective.size(); }
  std::size_t add_variable(double cost, double lo,
                           double hi = std::numeric_limits<double>::infinity());
  void add_row(std::vector<std::pair<std::size_t, double>> terms, double rhs);
};

enum class LpStatus { optimal, infeasible, unbounded, numeric_failure };

const char* to_string(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::numeric_failure;
  std::vector<double> x;
  double objective = 0.0;
  std::size_t pivots = 0;
  double max_violation = 0.0;  // rechecked by substitution
};

struct SimplexOptions {
  double pivot_tolerance = 1e-10;
  double feasibility_tolerance = 1e-9;
  double recheck_tolerance = 1e-8;
  // Dantzig pricing runs until this many consecutive degenerate pivots, then
  // Bland's rule takes over for the rest of the solve.
  std::size_t degenerate_streak_limit = 50;
  std::size_t max_pivots = 200000;
};

// Dense two-phase tableau simplex. Returns an optimal vertex, or the status
// explaining why there is none. The returned point is re-verified against
// every row and bound; a failed recheck is reported as numeric_failure.
LpSolution solve_lp(const LinearProgram& lp, const SimplexOptions& options = {});

// Largest violation of any row or bound at x (0 when feasible).
double max_violation(const LinearProgram& lp, std::span<const double> x);

}  // namespace efx
