#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "efx/generate.hpp"
#include "efx/instance.hpp"
#include "efx/lovasz.hpp"
#include "efx/matrix.hpp"

namespace efx {

// Unconstrained m x n point; solvers keep it inside [-M, 0]^{mn}.
class DualPoint {
 public:
  // Throws InputError on non-finite entries.
  explicit DualPoint(Matrix y);

  std::size_t items() const noexcept { return y_.rows(); }
  std::size_t agents() const noexcept { return y_.cols(); }
  double operator()(std::size_t k, std::size_t i) const noexcept { return y_(k, i); }
  const Matrix& matrix() const noexcept { return y_; }

 private:
  Matrix y_;
};

// lambda > 0: sharpness of the softmax and of the smoothed maximum.
class InverseTemperature {
 public:
  explicit InverseTemperature(double lambda);
  double value() const noexcept { return lambda_; }

 private:
  double lambda_;
};

// Box size M for encodings and the fixed-point domain [-M, 0]^{mn}.
class EncodingConstant {
 public:
  explicit EncodingConstant(double m);
  // 2V + 1 with V the instance's grand total.
  static EncodingConstant for_instance(const Instance& inst);
  double value() const noexcept { return m_; }

 private:
  double m_;
};

// Samples each item's owner independently from its row of x.
Allocation rowwise_round(const FractionalPoint& x, Engine& engine);
Allocation rowwise_round(const FractionalPoint& x, std::uint64_t seed);

// Upper bound on E[max_{i != j} u_ij(X)] under row-wise rounding of x:
//   (1/lambda) ln sum_{i != j, k} x_kj prod_{l != k}
//       (1 - x_li - x_lj + x_li e^{-lambda v_li} + x_lj e^{lambda v_li})
// Evaluated in log space; 1 - x_li - x_lj is taken as sum_{r != i,j} x_lr.
double expected_envy_bound(const Instance& inst, const FractionalPoint& x,
                           InverseTemperature lambda);

// Same bound from log(x) directly (entries may be -infinity for zeros).
double expected_envy_bound_log(const Instance& inst, const Matrix& log_x,
                               InverseTemperature lambda);

// Row-wise softmax of lambda * y, max-shifted; rows are renormalized.
FractionalPoint softmax_map(const DualPoint& y, InverseTemperature lambda);
Matrix log_softmax(const DualPoint& y, InverseTemperature lambda);

struct DcObjective {
  double value;
  // Lexicographically smallest maximizing (k, i, j).
  std::size_t item;
  std::size_t envious;
  std::size_t envied;
};

// f(y) = max_{i != j, k} (y_kj + sum_{l != k} max{y_li - v_li, y_lj + v_li,
//        max_{r != i,j} y_lr}) - sum_l max_r y_lr.
// An EFX allocation exists iff inf_y f(y) <= 0.
DcObjective dc_objective_detail(const Instance& inst, const DualPoint& y);
double dc_objective(const Instance& inst, const DualPoint& y);

// y with 0 at each item's owner and -M elsewhere. Throws InputError unless
// M > 2V.
DualPoint encode_allocation(const Instance& inst, const Allocation& alloc, EncodingConstant m);

// Item l goes to argmax_r y_lr, ties to the smallest agent index.
Allocation extract_allocation(const DualPoint& y);

// |g(softmax(y, lambda), lambda) - f(y)| for each lambda.
std::vector<double> limit_gaps(const Instance& inst, const DualPoint& y,
                               std::span<const double> lambdas);

// Numerically stable log(sum exp(terms)); -infinity for an empty input or
// when every term is -infinity.
double log_sum_exp(std::span<const double> terms);

}  // namespace efx
