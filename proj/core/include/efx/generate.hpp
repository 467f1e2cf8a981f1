#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "efx/instance.hpp"

namespace efx {

using Engine = std::mt19937_64;

// Independent engine per (seed, stream). Every randomized routine in the
// library takes either a seed or an engine built here.
Engine make_engine(std::uint64_t seed, std::uint64_t stream = 0);

enum class ValueDistribution {
  uniform01,        // i.i.d. Uniform[0,1)
  integer,          // i.i.d. uniform integers in 1..max_int
  identical_agents  // one Uniform[0,1) column copied to every agent
};

ValueDistribution parse_distribution(const std::string& name);
std::string distribution_name(ValueDistribution dist);

// Throws InputError for agents < 2 or items < 1.
Instance generate_instance(std::size_t agents, std::size_t items, ValueDistribution dist,
                           std::uint64_t seed, int max_int = 10);

// Random allocation with owners drawn uniformly.
Allocation random_allocation(std::size_t items, std::size_t agents, Engine& engine);

}  // namespace efx
