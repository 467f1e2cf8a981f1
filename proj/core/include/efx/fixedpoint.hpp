#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "efx/extension.hpp"
#include "efx/instance.hpp"

namespace efx {

// h(y_k) = max_r y_kr for every row.
std::vector<double> row_maxima(const DualPoint& y);

// A_kj(y) = max_{i != j} sum_{l != k} [h(y_l + v_li (e_j - e_i)) - h(y_l)].
// Each increment is bounded by v_li in absolute value, so |A_kj| <= V.
Matrix envy_shift_matrix(const Instance& inst, const DualPoint& y);

enum class FixedPointMap { T, TPrime, TTilde };
const char* to_string(FixedPointMap map);
FixedPointMap parse_fixed_point_map(const std::string& name);

struct MapEval {
  std::vector<double> h_row;
  Matrix A;
  Matrix image;
};

// Thrown when T-tilde maps a point of [-M, 0]^{mn} outside the box.
class SelfMapViolation : public std::logic_error {
 public:
  SelfMapViolation(std::size_t item, std::size_t agent, double value, double m);
  std::size_t item() const noexcept { return item_; }
  std::size_t agent() const noexcept { return agent_; }
  double value() const noexcept { return value_; }

 private:
  std::size_t item_;
  std::size_t agent_;
  double value_;
};

// T_kj(y) = min{y_kj, h(y_k) - A_kj(y)}
MapEval map_T(const Instance& inst, const DualPoint& y);
// T'_kj(y) = min{y_kj - h(y_k), -A_kj(y) [h(y_k) == 0]}, exact zero test.
MapEval map_T_prime(const Instance& inst, const DualPoint& y);
// T~_kj(y) = min{y_kj - h(y_k), -A_kj(y) e^{h(y_k)}}. Requires y in
// [-M, 0]^{mn}; throws InputError otherwise and SelfMapViolation if the image
// leaves the box.
MapEval map_T_tilde(const Instance& inst, const DualPoint& y, EncodingConstant m);

MapEval apply_map(FixedPointMap map, const Instance& inst, const DualPoint& y,
                  EncodingConstant m);

struct ConstraintViolation {
  std::size_t item;
  std::size_t agent;
  double value;  // y_kj - h(y_k) + A_kj(y)
};

struct ConstraintCheck {
  double slack;  // max_{k,j} (y_kj - h(y_k) + A_kj(y)), equal to f(y)
  std::vector<ConstraintViolation> violations;  // entries above tolerance
};

ConstraintCheck verify_constraints(const Instance& inst, const DualPoint& y, double tolerance);

struct NegativeRowEntry {
  std::size_t agent;
  bool skipped;     // |y_kj| <= tolerance, ratio undefined
  double residual;  // |e^{-h(y_k)} + A_kj(y) / y_kj|
};

struct NegativeRow {
  std::size_t item;
  double h;
  double log_bound;  // ln(1 + V)
  std::vector<NegativeRowEntry> entries;
};

// Rows with h(y_k) < -tolerance and the equality residuals of their entries.
std::vector<NegativeRow> negative_row_diagnostics(const Instance& inst, const DualPoint& y,
                                                 double tolerance = 1e-12);

struct PicardOptions {
  FixedPointMap map = FixedPointMap::TTilde;
  double alpha = 0.5;
  double tolerance = 1e-8;  // infinity-norm residual ||map(y) - y||
  std::size_t max_iterations = 5000;
  double slack_tolerance = 1e-6;
  double efx_tolerance = kDefaultEfxTolerance;
  std::optional<double> m_const;
};

struct FixedPointReport {
  bool converged = false;  // false means stalled; the report describes the best iterate
  std::size_t iterations = 0;
  double residual = 0.0;
  DualPoint y{Matrix{}};
  ConstraintCheck constraints;
  std::vector<NegativeRow> negative_rows;
  Allocation extracted;
  bool efx = false;
  bool constraints_hold() const { return constraints.slack <= slack_tolerance; }
  double slack_tolerance = 1e-6;
};

// Damped iteration y <- (1 - alpha) y + alpha map(y) from y0 in [-M, 0]^{mn}.
FixedPointReport picard_iterate(const Instance& inst, const DualPoint& y0,
                                const PicardOptions& options = {});

struct FixedPointMultiStart {
  FixedPointReport best;
  std::size_t best_start = 0;
  std::vector<FixedPointReport> runs;
};

// Random starts drawn from seed streams 0..starts-1. The best run is the
// first converged run with a verified EFX extraction, else the run with the
// smallest residual.
FixedPointMultiStart picard_multistart(const Instance& inst, std::size_t starts,
                                       std::uint64_t seed, const PicardOptions& options = {});

}  // namespace efx
