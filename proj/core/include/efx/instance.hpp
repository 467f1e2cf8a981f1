#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "efx/matrix.hpp"

namespace efx {

// Bad user input: malformed documents, invalid values, shape mismatches.
// Row/column are 1-based when present, matching the document format.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what,
                      std::optional<std::size_t> row = std::nullopt,
                      std::optional<std::size_t> col = std::nullopt);

  std::optional<std::size_t> row() const noexcept { return row_; }
  std::optional<std::size_t> col() const noexcept { return col_; }

 private:
  std::optional<std::size_t> row_;
  std::optional<std::size_t> col_;
};

// Raised by normalize() when an agent values every item at zero.
class ZeroColumnError : public InputError {
 public:
  explicit ZeroColumnError(std::size_t agent);
  std::size_t agent() const noexcept { return agent_; }

 private:
  std::size_t agent_;
};

inline constexpr double kNormalizedSumTolerance = 1e-12;
inline constexpr double kDefaultEfxTolerance = 1e-9;

// Item-by-agent valuation matrix: value(k, i) is what agent i gets from item k.
// Indices are 0-based in code and 1-based in documents.
class Instance {
 public:
  // Throws InputError unless m >= 1, n >= 2, and all values are finite and
  // nonnegative. When normalized is set, every column must sum to 1.
  explicit Instance(Matrix values, bool normalized = false);

  std::size_t items() const noexcept { return values_.rows(); }
  std::size_t agents() const noexcept { return values_.cols(); }
  double value(std::size_t item, std::size_t agent) const noexcept {
    return values_(item, agent);
  }
  const Matrix& values() const noexcept { return values_; }
  bool normalized() const noexcept { return normalized_; }

 private:
  Matrix values_;
  bool normalized_ = false;
};

struct TotalMass {
  std::vector<double> per_agent;  // V_i = sum_k v_ki
  double total = 0.0;             // V = sum_i V_i
};

TotalMass total_mass(const Instance& inst);

// Divides each column by its sum. Throws ZeroColumnError for an agent whose
// column sums to zero.
Instance normalize(const Instance& inst);

// Integral allocation: owner(k) is the agent receiving item k. Bundles may be
// empty.
class Allocation {
 public:
  Allocation() = default;
  Allocation(std::vector<std::size_t> owner, std::size_t agents);

  std::size_t items() const noexcept { return owner_.size(); }
  std::size_t agents() const noexcept { return agents_; }
  std::size_t owner(std::size_t item) const noexcept { return owner_[item]; }
  const std::vector<std::size_t>& owners() const noexcept { return owner_; }

  std::vector<std::size_t> bundle(std::size_t agent) const;

  friend bool operator==(const Allocation&, const Allocation&) = default;

 private:
  std::vector<std::size_t> owner_;
  std::size_t agents_ = 0;
};

// Throws InputError if alloc is not a partition of inst's items among its agents.
void check_compatible(const Instance& inst, const Allocation& alloc);

struct EnvyViolation {
  std::size_t envious;  // i
  std::size_t envied;   // j
  double slack;         // v_i(X_j) - min_{k in X_j} v_ki - v_i(X_i), > tolerance
};

struct EfxReport {
  bool efx = true;
  std::vector<EnvyViolation> violations;
};

// Linear-valuation EFX test: v_i(X_i) >= v_i(X_j) - min_{k in X_j} v_ki for all
// i != j. A pair against an empty bundle is always satisfied. Violations with
// slack <= tolerance are accepted.
EfxReport is_efx(const Instance& inst, const Allocation& alloc,
                 double tolerance = kDefaultEfxTolerance);

// max_{i != j} [v_i(X_j) - min_{k in X_j} v_ki - v_i(X_i)], empty X_j
// contributing -v_i(X_i). Nonpositive exactly when the allocation is EFX.
double efx_slack(const Instance& inst, const Allocation& alloc);

// Agents whose values are all zero, plus the instance with them removed.
// kept[a] is the original index of reduced agent a.
struct AgentReduction {
  std::vector<std::size_t> removed;
  std::vector<std::size_t> kept;
};

AgentReduction zero_value_agents(const Instance& inst);

// Restricts inst to the given agent columns (original indices, in order).
// Requires at least two agents.
Instance restrict_agents(const Instance& inst, const std::vector<std::size_t>& keep);

// Maps an allocation of a restricted instance back to original agent ids.
Allocation expand_allocation(const Allocation& reduced, const AgentReduction& reduction,
                             std::size_t original_agents);

}  // namespace efx
