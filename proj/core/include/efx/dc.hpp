#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "efx/extension.hpp"
#include "efx/instance.hpp"
#include "efx/simplex.hpp"

namespace efx {

// hbar(y) = max_{i != j, k} (y_kj + sum_{l != k} max{y_li - v_li, y_lj + v_li,
//           max_{r != i,j} y_lr}); convex.
double dc_convex_part(const Instance& inst, const DualPoint& y);

// h(y) = sum_l max_r y_lr; convex. dc_objective = dc_convex_part - row_max_sum.
double row_max_sum(const DualPoint& y);

struct DcDecomposition {
  double hbar_value;
  double h_value;
};

DcDecomposition decompose(const Instance& inst, const DualPoint& y);

// Epigraph LP solved at each DCA step, with variables
//   y_li (m*n), z_lij for i != j (m*n*(n-1)), and w.
// Rows, in order:
//   y_kj + sum_{l != k} z_lij - w <= 0        for all k, i != j
//   y_li - z_lij <=  v_li                     for all l, i != j
//   y_lj - z_lij <= -v_li                     for all l, i != j
//   y_lr - z_lij <= 0                         for all l, i != j, r not in {i, j}
// Boxes: y in [-M, 0], z in [-M - vmax, M + vmax],
//        w in [-(m+1)M - V, (m+1)M + V].
struct DcaLinearization {
  LinearProgram lp;
  std::size_t items = 0;
  std::size_t agents = 0;
  std::size_t family_rows[4] = {0, 0, 0, 0};

  std::size_t y_index(std::size_t l, std::size_t i) const { return l * agents + i; }
  std::size_t z_index(std::size_t l, std::size_t i, std::size_t j) const;
  std::size_t w_index() const { return lp.variables() - 1; }
};

// Objective: minimize w - sum_l y_{l, r_l}. `argmax_rows` holds r_l.
DcaLinearization build_dca_lp(const Instance& inst, const std::vector<std::size_t>& argmax_rows,
                              EncodingConstant m);

// r_l = argmax_r y_lr, ties to the smallest agent.
std::vector<std::size_t> row_argmax(const DualPoint& y);

struct DcaOptions {
  double delta = 1e-8;  // stop when the infinity-norm step is <= delta
  std::size_t max_iterations = 200;
  std::optional<double> m_const;  // defaults to 2V + 1
  double efx_tolerance = kDefaultEfxTolerance;
  SimplexOptions simplex;
};

struct DcaStep {
  std::size_t iteration;
  double objective;  // w - L^t(y^{t+1}) at the LP optimum
  double f_value;    // dc_objective at y^{t+1}
  double step_norm;  // ||y^{t+1} - y^t||_inf
  std::size_t pivots;
};

enum class DcaStatus { converged, iteration_limit, lp_failure };
const char* to_string(DcaStatus status);

struct DcaResult {
  DcaStatus status = DcaStatus::iteration_limit;
  DualPoint y{Matrix{}};
  double objective = 0.0;
  std::size_t iterations = 0;
  std::vector<DcaStep> trace;
  Allocation allocation;
  bool efx = false;
  bool monotone = true;  // objective never rose by more than 1e-9
  std::string detail;
};

// DCA from y0 (must lie in [-M, 0]^{mn}). A final objective <= 0 implies the
// extracted allocation is EFX; a positive one is only a stationary value.
DcaResult dca_solve(const Instance& inst, const DualPoint& y0, const DcaOptions& options = {});

// Encoding of the allocation giving each item to the agent valuing it most.
DualPoint greedy_start(const Instance& inst, EncodingConstant m);

// Uniform point of the box [-M, 0]^{mn}.
DualPoint random_start(std::size_t items, std::size_t agents, EncodingConstant m, Engine& engine);

struct MultiStartResult {
  DcaResult best;
  std::size_t best_start = 0;
  std::vector<double> objectives;  // final objective per start
};

// Start 0 is greedy_start; the rest are random_start from seed streams 1..
// Stops early at the first start that yields a verified EFX allocation.
MultiStartResult dca_multistart(const Instance& inst, std::size_t starts, std::uint64_t seed,
                                const DcaOptions& options = {});

}  // namespace efx
