#include "efx/generate.hpp"

namespace efx {

Engine make_engine(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(stream >> 32)};
  return Engine(seq);
}

ValueDistribution parse_distribution(const std::string& name) {
  if (name == "uniform01") return ValueDistribution::uniform01;
  if (name == "integer") return ValueDistribution::integer;
  if (name == "identical-agents") return ValueDistribution::identical_agents;
  throw InputError("unknown distribution \"" + name +
                   "\" (expected uniform01, integer, identical-agents)");
}

std::string distribution_name(ValueDistribution dist) {
  switch (dist) {
    case ValueDistribution::uniform01: return "uniform01";
    case ValueDistribution::integer: return "integer";
    case ValueDistribution::identical_agents: return "identical-agents";
  }
  return "unknown";
}

Instance generate_instance(std::size_t agents, std::size_t items, ValueDistribution dist,
                           std::uint64_t seed, int max_int) {
  if (agents < 2) throw InputError("need at least two agents");
  if (items < 1) throw InputError("need at least one item");
  if (max_int < 1) throw InputError("integer range must be at least 1");
  Engine engine = make_engine(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> whole(1, max_int);
  Matrix values(items, agents);
  for (std::size_t k = 0; k < items; ++k) {
    switch (dist) {
      case ValueDistribution::uniform01:
        for (std::size_t i = 0; i < agents; ++i) values(k, i) = unit(engine);
        break;
      case ValueDistribution::integer:
        for (std::size_t i = 0; i < agents; ++i) values(k, i) = whole(engine);
        break;
      case ValueDistribution::identical_agents: {
        const double v = unit(engine);
        for (std::size_t i = 0; i < agents; ++i) values(k, i) = v;
        break;
      }
    }
  }
  return Instance(std::move(values));
}

Allocation random_allocation(std::size_t items, std::size_t agents, Engine& engine) {
  std::uniform_int_distribution<std::size_t> pick(0, agents - 1);
  std::vector<std::size_t> owner(items);
  for (auto& o : owner) o = pick(engine);
  return Allocation(std::move(owner), agents);
}

}  // namespace efx
