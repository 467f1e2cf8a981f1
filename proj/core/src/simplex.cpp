#include "efx/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace efx {

std::size_t LinearProgram::add_variable(double cost, double lo, double hi) {
  objective.push_back(cost);
  lower.push_back(lo);
  upper.push_back(hi);
  return objective.size() - 1;
}

void LinearProgram::add_row(std::vector<std::pair<std::size_t, double>> terms, double rhs) {
  rows.push_back({std::move(terms), rhs});
}

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
    case LpStatus::numeric_failure: return "numeric-failure";
  }
  return "unknown";
}

double max_violation(const LinearProgram& lp, std::span<const double> x) {
  double worst = 0.0;
  for (std::size_t v = 0; v < lp.variables(); ++v) {
    worst = std::max({worst, lp.lower[v] - x[v], x[v] - lp.upper[v]});
  }
  for (const auto& row : lp.rows) {
    double lhs = 0.0;
    for (const auto& [var, coeff] : row.terms) lhs += coeff * x[var];
    worst = std::max(worst, lhs - row.rhs);
  }
  return worst;
}

namespace {

// Tableau over shifted variables x' = x - lower >= 0. Column layout:
// [structural | slack per row | artificial per negative-rhs row | rhs].
class Tableau {
 public:
  Tableau(const LinearProgram& lp, const SimplexOptions& options)
      : options_(options), structural_(lp.variables()) {
    // Collect rows as dense vectors over structural columns.
    std::vector<std::vector<double>> dense;
    std::vector<double> rhs;
    for (const auto& row : lp.rows) {
      std::vector<double> a(structural_, 0.0);
      double b = row.rhs;
      for (const auto& [var, coeff] : row.terms) {
        a.at(var) += coeff;
        b -= coeff * lp.lower[var];
      }
      dense.push_back(std::move(a));
      rhs.push_back(b);
    }
    for (std::size_t v = 0; v < structural_; ++v) {
      if (!std::isfinite(lp.lower[v])) {
        throw std::invalid_argument("solve_lp: lower bounds must be finite");
      }
      if (std::isfinite(lp.upper[v])) {
        std::vector<double> a(structural_, 0.0);
        a[v] = 1.0;
        dense.push_back(std::move(a));
        rhs.push_back(lp.upper[v] - lp.lower[v]);
      }
    }
    rows_ = dense.size();
    artificial_begin_ = structural_ + rows_;
    std::size_t artificials = 0;
    for (double b : rhs) artificials += b < 0.0 ? 1 : 0;
    cols_ = artificial_begin_ + artificials;
    width_ = cols_ + 1;
    cells_.assign((rows_ + 1) * width_, 0.0);
    basis_.assign(rows_, 0);

    std::size_t next_artificial = artificial_begin_;
    for (std::size_t r = 0; r < rows_; ++r) {
      const double sign = rhs[r] < 0.0 ? -1.0 : 1.0;
      for (std::size_t c = 0; c < structural_; ++c) at(r, c) = sign * dense[r][c];
      at(r, structural_ + r) = sign;
      at(r, cols_) = sign * rhs[r];
      if (sign < 0.0) {
        at(r, next_artificial) = 1.0;
        basis_[r] = next_artificial++;
      } else {
        basis_[r] = structural_ + r;
      }
    }
  }

  // Returns the optimal phase-I infeasibility (sum of artificials).
  LpStatus phase_one(double& infeasibility) {
    std::vector<double> cost(cols_, 0.0);
    for (std::size_t c = artificial_begin_; c < cols_; ++c) cost[c] = 1.0;
    load_objective(cost);
    const LpStatus status = run(/*allow_artificial=*/true);
    infeasibility = -at(rows_, cols_);
    return status;
  }

  void drive_out_artificials() {
    for (std::size_t r = 0; r < rows_; ++r) {
      if (basis_[r] < artificial_begin_) continue;
      std::size_t best = cols_;
      double best_abs = options_.pivot_tolerance;
      for (std::size_t c = 0; c < artificial_begin_; ++c) {
        if (std::abs(at(r, c)) > best_abs) {
          best_abs = std::abs(at(r, c));
          best = c;
        }
      }
      if (best != cols_) pivot(r, best);
      // Otherwise the row is redundant; its artificial stays basic at zero
      // and can never re-enter.
    }
  }

  LpStatus phase_two(std::span<const double> objective) {
    std::vector<double> cost(cols_, 0.0);
    std::copy(objective.begin(), objective.end(), cost.begin());
    load_objective(cost);
    return run(/*allow_artificial=*/false);
  }

  std::vector<double> shifted_solution() const {
    std::vector<double> x(structural_, 0.0);
    for (std::size_t r = 0; r < rows_; ++r) {
      if (basis_[r] < structural_) x[basis_[r]] = std::max(at(r, cols_), 0.0);
    }
    return x;
  }

  std::size_t pivots() const noexcept { return pivots_; }

 private:
  double& at(std::size_t r, std::size_t c) { return cells_[r * width_ + c]; }
  double at(std::size_t r, std::size_t c) const { return cells_[r * width_ + c]; }

  void load_objective(const std::vector<double>& cost) {
    for (std::size_t c = 0; c <= cols_; ++c) at(rows_, c) = c < cols_ ? cost[c] : 0.0;
    for (std::size_t r = 0; r < rows_; ++r) {
      const double cb = cost[basis_[r]];
      if (cb == 0.0) continue;
      for (std::size_t c = 0; c <= cols_; ++c) at(rows_, c) -= cb * at(r, c);
    }
  }

  void pivot(std::size_t pr, std::size_t pc) {
    const double p = at(pr, pc);
    for (std::size_t c = 0; c <= cols_; ++c) at(pr, c) /= p;
    at(pr, pc) = 1.0;
    for (std::size_t r = 0; r <= rows_; ++r) {
      if (r == pr) continue;
      const double factor = at(r, pc);
      if (factor == 0.0) continue;
      double* dst = &cells_[r * width_];
      const double* src = &cells_[pr * width_];
      for (std::size_t c = 0; c <= cols_; ++c) dst[c] -= factor * src[c];
      dst[pc] = 0.0;
    }
    basis_[pr] = pc;
    ++pivots_;
  }

  LpStatus run(bool allow_artificial) {
    const std::size_t enter_limit = allow_artificial ? cols_ : artificial_begin_;
    const double dj_tol = options_.feasibility_tolerance;
    bool bland = false;
    std::size_t degenerate_streak = 0;
    while (true) {
      if (pivots_ >= options_.max_pivots) return LpStatus::numeric_failure;

      std::size_t enter = cols_;
      double most_negative = -dj_tol;
      for (std::size_t c = 0; c < enter_limit; ++c) {
        const double d = at(rows_, c);
        if (d < most_negative) {
          enter = c;
          if (bland) break;
          most_negative = d;
        }
      }
      if (enter == cols_) return LpStatus::optimal;

      std::size_t leave = rows_;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < rows_; ++r) {
        const double a = at(r, enter);
        if (a <= options_.pivot_tolerance) continue;
        const double ratio = std::max(at(r, cols_), 0.0) / a;
        if (leave == rows_ || ratio < best_ratio - 1e-12) {
          leave = r;
          best_ratio = ratio;
        } else if (ratio <= best_ratio + 1e-12) {
          const bool take = bland ? basis_[r] < basis_[leave] : a > at(leave, enter);
          if (take) {
            leave = r;
            best_ratio = std::min(best_ratio, ratio);
          }
        }
      }
      if (leave == rows_) return LpStatus::unbounded;

      degenerate_streak = best_ratio <= 1e-12 ? degenerate_streak + 1 : 0;
      if (degenerate_streak > options_.degenerate_streak_limit) bland = true;
      pivot(leave, enter);
    }
  }

  SimplexOptions options_;
  std::size_t structural_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t width_ = 0;
  std::size_t artificial_begin_ = 0;
  std::vector<double> cells_;
  std::vector<std::size_t> basis_;
  std::size_t pivots_ = 0;
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, const SimplexOptions& options) {
  if (lp.lower.size() != lp.variables() || lp.upper.size() != lp.variables()) {
    throw std::invalid_argument("solve_lp: bound vectors do not match the objective");
  }
  for (std::size_t v = 0; v < lp.variables(); ++v) {
    if (lp.lower[v] > lp.upper[v]) {
      LpSolution s;
      s.status = LpStatus::infeasible;
      return s;
    }
  }

  Tableau tableau(lp, options);
  LpSolution solution;

  double infeasibility = 0.0;
  LpStatus status = tableau.phase_one(infeasibility);
  if (status != LpStatus::optimal) {
    solution.status = status == LpStatus::unbounded ? LpStatus::numeric_failure : status;
    solution.pivots = tableau.pivots();
    return solution;
  }
  if (infeasibility > options.feasibility_tolerance) {
    solution.status = LpStatus::infeasible;
    solution.pivots = tableau.pivots();
    return solution;
  }
  tableau.drive_out_artificials();
  status = tableau.phase_two(lp.objective);
  solution.pivots = tableau.pivots();
  if (status != LpStatus::optimal) {
    solution.status = status;
    return solution;
  }

  solution.x = tableau.shifted_solution();
  for (std::size_t v = 0; v < lp.variables(); ++v) {
    solution.x[v] = std::min(solution.x[v] + lp.lower[v], lp.upper[v]);
  }
  solution.objective = 0.0;
  for (std::size_t v = 0; v < lp.variables(); ++v) {
    solution.objective += lp.objective[v] * solution.x[v];
  }
  solution.max_violation = max_violation(lp, solution.x);
  solution.status = solution.max_violation <= options.recheck_tolerance
                        ? LpStatus::optimal
                        : LpStatus::numeric_failure;
  return solution;
}

}  // namespace efx
