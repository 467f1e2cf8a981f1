#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "efx/generate.hpp"
#include "efx/instance.hpp"
#include "efx/matrix.hpp"
#include "efx/setfun.hpp"

namespace efx {

inline constexpr double kRowSumTolerance = 1e-10;

// A point of the partition polytope: m x n, entries in [0,1], rows summing
// to 1 within kRowSumTolerance.
class FractionalPoint {
 public:
  // Throws InputError when x is outside the polytope.
  explicit FractionalPoint(Matrix x);

  static FractionalPoint uniform(std::size_t items, std::size_t agents);
  static FractionalPoint from_allocation(const Allocation& alloc);

  std::size_t items() const noexcept { return x_.rows(); }
  std::size_t agents() const noexcept { return x_.cols(); }
  double operator()(std::size_t k, std::size_t i) const noexcept { return x_(k, i); }
  const Matrix& matrix() const noexcept { return x_; }

 private:
  Matrix x_;
};

// Set function on subsets of a ground set of at most 64 elements; must
// satisfy fn(empty) = 0.
using SetFunction = std::function<double(ItemSet)>;

// Lovasz extension at x, by sorting coordinates in non-increasing order
// (ties by ascending index) and weighting the prefix values by successive
// coordinate drops; exact at indicator vectors.
double lovasz_extension(const SetFunction& fn, std::span<const double> x);

// u_ij (or its shifted form) as a set function on the m*n ground set, where
// element k*n + a means "item k is in agent a's bundle". Keeps a reference to inst.
SetFunction pair_envy_set_function(const Instance& inst, std::size_t i, std::size_t j,
                                   EnvyForm form);

// Items ordered by column `agent` of x, non-increasing, ties by item index.
std::vector<std::size_t> sorted_column(const Matrix& x, std::size_t agent);

// Closed form of the Lovasz extension of u_ij:
//   sum_{k>=2} (v_ki + (min_{r<k} v_ri - v_ki)^+) x_kj - sum_k v_ki x_ki
// with items taken in sorted_column(x, j) order.
double closed_form_extension(const Instance& inst, std::size_t i, std::size_t j,
                             const Matrix& x);

struct RelaxationValue {
  double value;
  std::size_t i;  // first maximizing pair, lexicographic
  std::size_t j;
};

// f(x) = max_{i != j} of the extension of the shifted (monotone) u_ij.
// Requires a normalized instance; the EFX threshold for this form is 1.
RelaxationValue relax_objective(const Instance& inst, const Matrix& x);

// Subgradient of the shifted extension for pair (i, j) at x.
Matrix relax_subgradient(const Instance& inst, std::size_t i, std::size_t j, const Matrix& x);

// Euclidean projection onto the probability simplex (sort and shift).
void project_to_simplex(std::span<double> v);
void project_rows_to_simplex(Matrix& x);

struct RelaxationOptions {
  std::size_t iterations = 500;
  double step0 = 0.5;  // step at iteration t is step0 / sqrt(t)
};

struct RelaxationResult {
  FractionalPoint best;
  double value;          // f* estimate: best objective seen
  double initial_value;  // objective at the uniform point
  std::size_t best_iteration;
  double max_row_error;  // worst |row sum - 1| over all iterates
};

// Projected subgradient descent from the uniform point, keeping the best
// iterate.
RelaxationResult minimize_relaxation(const Instance& inst, const RelaxationOptions& options = {});

struct ThresholdRounding {
  std::vector<double> thresholds;  // one per agent
  BundleProfile bundles;           // item k in bundle i iff x_ki >= threshold_i
  std::vector<std::size_t> unassigned;
  std::vector<std::size_t> multiply_assigned;
  bool feasible() const { return unassigned.empty() && multiply_assigned.empty(); }
};

// Column-threshold rounding. The result is reported as-is; it is not repaired
// into a partition.
ThresholdRounding threshold_round(const FractionalPoint& x, Engine& engine);
ThresholdRounding threshold_round(const FractionalPoint& x, std::uint64_t seed);

}  // namespace efx
