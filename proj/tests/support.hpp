#pragma once

// Shared fixtures for the unit and acceptance suites. The reference
// evaluators here are written straight from the definitions and share no
// code with the library routines they are compared against.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include "efx/generate.hpp"
#include "efx/instance.hpp"
#include "efx/matrix.hpp"

namespace efx::testing {

// The running three-item, two-agent example, normalized.
inline Instance example_instance() {
  return Instance(Matrix(3, 2, {0.5, 0.25, 0.25, 0.25, 0.25, 0.5}), true);
}

inline Instance example_raw() { return Instance(Matrix(3, 2, {4, 1, 2, 1, 2, 2})); }

inline Allocation alloc(std::vector<std::size_t> owner, std::size_t agents) {
  return Allocation(std::move(owner), agents);
}

// Random instance; integer-valued ones have exact sums in double.
inline Instance random_instance(std::size_t agents, std::size_t items, std::uint64_t seed,
                                bool integer = false) {
  return generate_instance(agents, items,
                           integer ? ValueDistribution::integer : ValueDistribution::uniform01,
                           seed, 9);
}

// Calls fn on every owner vector in {0..n-1}^m.
inline void for_each_allocation(std::size_t agents, std::size_t items,
                                const std::function<void(const Allocation&)>& fn) {
  std::vector<std::size_t> owner(items, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == items) {
      fn(Allocation(owner, agents));
      return;
    }
    for (std::size_t a = 0; a < agents; ++a) {
      owner[k] = a;
      rec(k + 1);
    }
  };
  rec(0);
}

inline double bundle_sum(const Instance& inst, std::size_t agent,
                         const std::vector<std::size_t>& items) {
  double s = 0.0;
  for (std::size_t k : items) s += inst.value(k, agent);
  return s;
}

// EFX straight from "remove any single good": for every i != j and every
// k in X_j, v_i(X_i) >= v_i(X_j \ {k}).
inline bool efx_by_definition(const Instance& inst, const Allocation& x, double tol = 1e-9) {
  for (std::size_t i = 0; i < inst.agents(); ++i) {
    const double own = bundle_sum(inst, i, x.bundle(i));
    for (std::size_t j = 0; j < inst.agents(); ++j) {
      if (i == j) continue;
      const auto other = x.bundle(j);
      for (std::size_t drop = 0; drop < other.size(); ++drop) {
        std::vector<std::size_t> rest;
        for (std::size_t t = 0; t < other.size(); ++t) {
          if (t != drop) rest.push_back(other[t]);
        }
        if (bundle_sum(inst, i, rest) > own + tol) return false;
      }
    }
  }
  return true;
}

// max_{i != j} [v_i(X_j minus its least valued item) - v_i(X_i)], empty
// X_j counting as 0.
inline double slack_by_definition(const Instance& inst, const Allocation& x) {
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < inst.agents(); ++i) {
    const double own = bundle_sum(inst, i, x.bundle(i));
    for (std::size_t j = 0; j < inst.agents(); ++j) {
      if (i == j) continue;
      const auto other = x.bundle(j);
      double reduced = 0.0;
      if (!other.empty()) {
        double lo = std::numeric_limits<double>::infinity();
        for (std::size_t k : other) lo = std::min(lo, inst.value(k, i));
        reduced = bundle_sum(inst, i, other) - lo;
      }
      worst = std::max(worst, reduced - own);
    }
  }
  return worst;
}

// Uniform point of the simplex per row (sorted-uniform spacings).
inline Matrix random_simplex_rows(std::size_t rows, std::size_t cols, Engine& engine) {
  std::exponential_distribution<double> expo(1.0);
  Matrix x(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    double total = 0.0;
    for (std::size_t c = 0; c < cols; ++c) total += (x(r, c) = expo(engine));
    for (std::size_t c = 0; c < cols; ++c) x(r, c) /= total;
  }
  return x;
}

inline Matrix random_box_point(std::size_t rows, std::size_t cols, double m, Engine& engine) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Matrix y(rows, cols);
  for (double& e : y.flat()) e = -m * unit(engine);
  return y;
}

}  // namespace efx::testing
