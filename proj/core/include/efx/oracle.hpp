#pragma once

#include <cstdint>
#include <vector>

#include "efx/instance.hpp"
#include "efx/setfun.hpp"

namespace efx {

inline constexpr std::uint64_t kOracleLimit = 10'000'000;

// Thrown when n^m exceeds kOracleLimit.
class OracleTooLarge : public InputError {
 public:
  OracleTooLarge(std::size_t agents, std::size_t items);
};

// n^m, or kOracleLimit + 1 once it exceeds the guard.
std::uint64_t allocation_count(std::size_t agents, std::size_t items);

// Owner vector number `index` in lexicographic order (item 0 most significant).
Allocation allocation_at(std::uint64_t index, std::size_t agents, std::size_t items);

struct OracleOptions {
  std::size_t cap = 64;  // witnesses kept; the count stays exact. 0 keeps all.
  double tolerance = kDefaultEfxTolerance;
  unsigned threads = 1;
};

struct OracleResult {
  bool exists = false;
  std::vector<Allocation> witnesses;  // in enumeration order
  std::uint64_t witness_count = 0;
  std::uint64_t scanned = 0;
};

OracleResult enumerate_efx(const Instance& inst, const OracleOptions& options = {});

struct EnvyMinimum {
  double value;
  Allocation argmin;  // first minimizer in enumeration order
};

// Exact min over all allocations of max_{i != j} of the chosen envy form.
EnvyMinimum min_max_pair_envy(const Instance& inst, EnvyForm form = EnvyForm::shifted);

}  // namespace efx
