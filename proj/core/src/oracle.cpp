#include "efx/oracle.hpp"

#include <algorithm>
#include <limits>
#include <thread>

namespace efx {

OracleTooLarge::OracleTooLarge(std::size_t agents, std::size_t items)
    : InputError("instance too large for exhaustive search: " + std::to_string(agents) + "^" +
                 std::to_string(items) + " allocations exceed " +
                 std::to_string(kOracleLimit)) {}

std::uint64_t allocation_count(std::size_t agents, std::size_t items) {
  std::uint64_t count = 1;
  for (std::size_t k = 0; k < items; ++k) {
    count *= agents;
    if (count > kOracleLimit) return kOracleLimit + 1;
  }
  return count;
}

Allocation allocation_at(std::uint64_t index, std::size_t agents, std::size_t items) {
  std::vector<std::size_t> owner(items);
  for (std::size_t k = items; k-- > 0;) {
    owner[k] = static_cast<std::size_t>(index % agents);
    index /= agents;
  }
  return Allocation(std::move(owner), agents);
}

namespace {

void check_guard(const Instance& inst) {
  if (allocation_count(inst.agents(), inst.items()) > kOracleLimit) {
    throw OracleTooLarge(inst.agents(), inst.items());
  }
}

// Advances an owner vector to the next one in lexicographic order.
void advance(std::vector<std::size_t>& owner, std::size_t agents) {
  for (std::size_t k = owner.size(); k-- > 0;) {
    if (++owner[k] < agents) return;
    owner[k] = 0;
  }
}

struct Chunk {
  std::vector<Allocation> witnesses;
  std::uint64_t count = 0;
};

Chunk scan(const Instance& inst, std::uint64_t begin, std::uint64_t end, std::size_t cap,
           double tolerance) {
  Chunk chunk;
  if (begin >= end) return chunk;
  std::vector<std::size_t> owner = allocation_at(begin, inst.agents(), inst.items()).owners();
  for (std::uint64_t index = begin; index < end; ++index) {
    Allocation alloc(owner, inst.agents());
    if (is_efx(inst, alloc, tolerance).efx) {
      ++chunk.count;
      if (cap == 0 || chunk.witnesses.size() < cap) chunk.witnesses.push_back(std::move(alloc));
    }
    advance(owner, inst.agents());
  }
  return chunk;
}

}  // namespace

OracleResult enumerate_efx(const Instance& inst, const OracleOptions& options) {
  check_guard(inst);
  const std::uint64_t total = allocation_count(inst.agents(), inst.items());
  const unsigned threads =
      static_cast<unsigned>(std::clamp<std::uint64_t>(options.threads, 1, total));

  std::vector<Chunk> chunks(threads);
  const std::uint64_t per = (total + threads - 1) / threads;
  if (threads == 1) {
    chunks[0] = scan(inst, 0, total, options.cap, options.tolerance);
  } else {
    std::vector<std::thread> workers;
    for (unsigned t = 0; t < threads; ++t) {
      const std::uint64_t begin = std::min(total, per * t);
      const std::uint64_t end = std::min(total, begin + per);
      workers.emplace_back([&, t, begin, end] {
        chunks[t] = scan(inst, begin, end, options.cap, options.tolerance);
      });
    }
    for (auto& w : workers) w.join();
  }

  OracleResult result;
  result.scanned = total;
  for (auto& chunk : chunks) {
    result.witness_count += chunk.count;
    for (auto& w : chunk.witnesses) {
      if (options.cap != 0 && result.witnesses.size() >= options.cap) break;
      result.witnesses.push_back(std::move(w));
    }
  }
  result.exists = result.witness_count > 0;
  return result;
}

EnvyMinimum min_max_pair_envy(const Instance& inst, EnvyForm form) {
  check_guard(inst);
  const std::uint64_t total = allocation_count(inst.agents(), inst.items());
  std::vector<std::size_t> owner(inst.items(), 0);
  EnvyMinimum best{std::numeric_limits<double>::infinity(), Allocation{}};
  for (std::uint64_t index = 0; index < total; ++index) {
    Allocation alloc(owner, inst.agents());
    const double value = max_pair_envy(inst, alloc, form);
    if (value < best.value) best = {value, std::move(alloc)};
    advance(owner, inst.agents());
  }
  return best;
}

}  // namespace efx
