#pragma once

// Brute-force LP reference: every vertex of {x : A x <= b, lo <= x <= hi} is
// the solution of some d linearly independent tight constraints. All finite
// bounds are treated as constraints, so the feasible set must be bounded.

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "efx/generate.hpp"
#include "efx/simplex.hpp"

namespace efx::testing {

struct VertexOptimum {
  double objective;
  std::vector<double> x;
  std::size_t vertices;  // feasible vertices seen
};

class VertexEnumerator {
 public:
  explicit VertexEnumerator(const LinearProgram& lp, double tol = 1e-9) : lp_(lp), tol_(tol) {
    d_ = lp.variables();
    for (const auto& row : lp.rows) {
      std::vector<double> a(d_, 0.0);
      for (const auto& [v, c] : row.terms) a[v] += c;
      add(std::move(a), row.rhs);
    }
    for (std::size_t v = 0; v < d_; ++v) {
      std::vector<double> lo(d_, 0.0), hi(d_, 0.0);
      lo[v] = -1.0;
      add(std::move(lo), -lp.lower[v]);
      if (std::isfinite(lp.upper[v])) {
        hi[v] = 1.0;
        add(std::move(hi), lp.upper[v]);
      }
    }
  }

  std::optional<VertexOptimum> solve() {
    best_.reset();
    count_ = 0;
    chosen_.clear();
    basis_.clear();
    search(0);
    if (best_) best_->vertices = count_;
    return best_;
  }

 private:
  void add(std::vector<double> a, double b) {
    a_.push_back(std::move(a));
    b_.push_back(b);
  }

  // Reduces `row` against the current orthogonal basis; returns the
  // remainder (zero when the row is dependent).
  std::vector<double> residual(const std::vector<double>& row) const {
    std::vector<double> r = row;
    for (const auto& q : basis_) {
      double dot = 0.0;
      for (std::size_t c = 0; c < d_; ++c) dot += r[c] * q[c];
      for (std::size_t c = 0; c < d_; ++c) r[c] -= dot * q[c];
    }
    return r;
  }

  void search(std::size_t start) {
    if (chosen_.size() == d_) {
      evaluate();
      return;
    }
    const std::size_t need = d_ - chosen_.size();
    for (std::size_t c = start; c + need <= a_.size(); ++c) {
      std::vector<double> r = residual(a_[c]);
      double norm = 0.0;
      for (double e : r) norm += e * e;
      norm = std::sqrt(norm);
      if (norm < 1e-9) continue;
      for (double& e : r) e /= norm;
      basis_.push_back(std::move(r));
      chosen_.push_back(c);
      search(c + 1);
      chosen_.pop_back();
      basis_.pop_back();
    }
  }

  void evaluate() {
    // Gaussian elimination with partial pivoting on the chosen tight rows.
    std::vector<std::vector<double>> m(d_, std::vector<double>(d_ + 1));
    for (std::size_t r = 0; r < d_; ++r) {
      for (std::size_t c = 0; c < d_; ++c) m[r][c] = a_[chosen_[r]][c];
      m[r][d_] = b_[chosen_[r]];
    }
    for (std::size_t col = 0; col < d_; ++col) {
      std::size_t piv = col;
      for (std::size_t r = col + 1; r < d_; ++r) {
        if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
      }
      std::swap(m[piv], m[col]);
      for (std::size_t r = 0; r < d_; ++r) {
        if (r == col) continue;
        const double f = m[r][col] / m[col][col];
        for (std::size_t c = col; c <= d_; ++c) m[r][c] -= f * m[col][c];
      }
    }
    std::vector<double> x(d_);
    for (std::size_t r = 0; r < d_; ++r) x[r] = m[r][d_] / m[r][r];
    for (std::size_t c = 0; c < a_.size(); ++c) {
      double lhs = 0.0;
      for (std::size_t v = 0; v < d_; ++v) lhs += a_[c][v] * x[v];
      if (lhs > b_[c] + tol_) return;
    }
    ++count_;
    double obj = 0.0;
    for (std::size_t v = 0; v < d_; ++v) obj += lp_.objective[v] * x[v];
    if (!best_ || obj < best_->objective) best_ = VertexOptimum{obj, x, 0};
  }

  const LinearProgram& lp_;
  double tol_;
  std::size_t d_ = 0;
  std::vector<std::vector<double>> a_;
  std::vector<double> b_;
  std::vector<std::size_t> chosen_;
  std::vector<std::vector<double>> basis_;
  std::optional<VertexOptimum> best_;
  std::size_t count_ = 0;
};

// Random feasible LP: boxed variables, rows built to hold at a random
// interior point, so the optimum is finite.
inline LinearProgram random_bounded_lp(std::size_t vars, std::size_t rows, Engine& engine) {
  std::uniform_real_distribution<double> coeff(-3.0, 3.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> small(-3, 3);
  LinearProgram lp;
  std::vector<double> inside(vars);
  for (std::size_t v = 0; v < vars; ++v) {
    const double lo = -1.0 - 4.0 * unit(engine);
    const double hi = 1.0 + 4.0 * unit(engine);
    lp.add_variable(small(engine), lo, hi);
    inside[v] = lo + (hi - lo) * unit(engine);
  }
  for (std::size_t r = 0; r < rows; ++r) {
    std::vector<std::pair<std::size_t, double>> terms;
    double at = 0.0;
    for (std::size_t v = 0; v < vars; ++v) {
      if (unit(engine) < 0.3) continue;
      const double c = coeff(engine);
      terms.emplace_back(v, c);
      at += c * inside[v];
    }
    lp.add_row(std::move(terms), at + 2.0 * unit(engine));
  }
  return lp;
}

}  // namespace efx::testing
