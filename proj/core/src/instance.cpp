#include "efx/instance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace efx {

namespace {

std::string located(const std::string& what, std::optional<std::size_t> row,
                    std::optional<std::size_t> col) {
  if (!row && !col) return what;
  std::ostringstream os;
  os << what << " (";
  if (row) os << "row " << *row;
  if (row && col) os << ", ";
  if (col) os << "column " << *col;
  os << ")";
  return os.str();
}

// Per (viewer i, bundle j): sum and minimum of agent i's values over X_j.
struct BundleTable {
  std::size_t n;
  std::vector<double> sum;
  std::vector<double> min;
  std::vector<std::size_t> count;

  double& s(std::size_t i, std::size_t j) { return sum[i * n + j]; }
  double& lo(std::size_t i, std::size_t j) { return min[i * n + j]; }
};

BundleTable tabulate(const Instance& inst, const Allocation& alloc) {
  const std::size_t n = inst.agents();
  BundleTable t{n, std::vector<double>(n * n, 0.0),
                std::vector<double>(n * n, std::numeric_limits<double>::infinity()),
                std::vector<std::size_t>(n, 0)};
  for (std::size_t k = 0; k < inst.items(); ++k) {
    const std::size_t j = alloc.owner(k);
    ++t.count[j];
    for (std::size_t i = 0; i < n; ++i) {
      const double v = inst.value(k, i);
      t.s(i, j) += v;
      t.lo(i, j) = std::min(t.lo(i, j), v);
    }
  }
  return t;
}

}  // namespace

InputError::InputError(const std::string& what, std::optional<std::size_t> row,
                       std::optional<std::size_t> col)
    : std::runtime_error(located(what, row, col)), row_(row), col_(col) {}

ZeroColumnError::ZeroColumnError(std::size_t agent)
    : InputError("agent values every item at zero; cannot normalize", std::nullopt, agent + 1),
      agent_(agent) {}

Instance::Instance(Matrix values, bool normalized)
    : values_(std::move(values)), normalized_(normalized) {
  if (values_.rows() < 1) throw InputError("instance needs at least one item");
  if (values_.cols() < 2) throw InputError("instance needs at least two agents");
  for (std::size_t k = 0; k < values_.rows(); ++k) {
    for (std::size_t i = 0; i < values_.cols(); ++i) {
      const double v = values_(k, i);
      if (!std::isfinite(v)) throw InputError("value is not finite", k + 1, i + 1);
      if (v < 0.0) throw InputError("value is negative", k + 1, i + 1);
    }
  }
  if (normalized_) {
    for (std::size_t i = 0; i < values_.cols(); ++i) {
      double col = 0.0;
      for (std::size_t k = 0; k < values_.rows(); ++k) col += values_(k, i);
      if (std::abs(col - 1.0) > kNormalizedSumTolerance) {
        throw InputError("normalized instance column does not sum to 1", std::nullopt, i + 1);
      }
    }
  }
}

TotalMass total_mass(const Instance& inst) {
  TotalMass mass;
  mass.per_agent.assign(inst.agents(), 0.0);
  for (std::size_t k = 0; k < inst.items(); ++k) {
    for (std::size_t i = 0; i < inst.agents(); ++i) mass.per_agent[i] += inst.value(k, i);
  }
  for (double v : mass.per_agent) mass.total += v;
  return mass;
}

Instance normalize(const Instance& inst) {
  const TotalMass mass = total_mass(inst);
  Matrix scaled(inst.items(), inst.agents());
  for (std::size_t i = 0; i < inst.agents(); ++i) {
    if (!(mass.per_agent[i] > 0.0)) throw ZeroColumnError(i);
    for (std::size_t k = 0; k < inst.items(); ++k) {
      scaled(k, i) = inst.value(k, i) / mass.per_agent[i];
    }
  }
  return Instance(std::move(scaled), true);
}

Allocation::Allocation(std::vector<std::size_t> owner, std::size_t agents)
    : owner_(std::move(owner)), agents_(agents) {
  for (std::size_t k = 0; k < owner_.size(); ++k) {
    if (owner_[k] >= agents_) throw InputError("owner is not a valid agent", k + 1);
  }
}

std::vector<std::size_t> Allocation::bundle(std::size_t agent) const {
  std::vector<std::size_t> items;
  for (std::size_t k = 0; k < owner_.size(); ++k) {
    if (owner_[k] == agent) items.push_back(k);
  }
  return items;
}

void check_compatible(const Instance& inst, const Allocation& alloc) {
  if (alloc.items() != inst.items()) {
    throw InputError("allocation covers " + std::to_string(alloc.items()) +
                     " items but the instance has " + std::to_string(inst.items()));
  }
  if (alloc.agents() != inst.agents()) {
    throw InputError("allocation is over " + std::to_string(alloc.agents()) +
                     " agents but the instance has " + std::to_string(inst.agents()));
  }
}

EfxReport is_efx(const Instance& inst, const Allocation& alloc, double tolerance) {
  check_compatible(inst, alloc);
  BundleTable t = tabulate(inst, alloc);
  EfxReport report;
  const std::size_t n = inst.agents();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || t.count[j] == 0) continue;
      const double slack = t.s(i, j) - t.lo(i, j) - t.s(i, i);
      if (slack > tolerance) report.violations.push_back({i, j, slack});
    }
  }
  report.efx = report.violations.empty();
  return report;
}

double efx_slack(const Instance& inst, const Allocation& alloc) {
  check_compatible(inst, alloc);
  BundleTable t = tabulate(inst, alloc);
  const std::size_t n = inst.agents();
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const double reduced = t.count[j] == 0 ? 0.0 : t.s(i, j) - t.lo(i, j);
      worst = std::max(worst, reduced - t.s(i, i));
    }
  }
  return worst;
}

AgentReduction zero_value_agents(const Instance& inst) {
  const TotalMass mass = total_mass(inst);
  AgentReduction r;
  for (std::size_t i = 0; i < inst.agents(); ++i) {
    (mass.per_agent[i] > 0.0 ? r.kept : r.removed).push_back(i);
  }
  return r;
}

Instance restrict_agents(const Instance& inst, const std::vector<std::size_t>& keep) {
  Matrix values(inst.items(), keep.size());
  for (std::size_t k = 0; k < inst.items(); ++k) {
    for (std::size_t a = 0; a < keep.size(); ++a) values(k, a) = inst.value(k, keep[a]);
  }
  return Instance(std::move(values), false);
}

Allocation expand_allocation(const Allocation& reduced, const AgentReduction& reduction,
                             std::size_t original_agents) {
  std::vector<std::size_t> owner(reduced.items());
  for (std::size_t k = 0; k < reduced.items(); ++k) {
    owner[k] = reduction.kept.at(reduced.owner(k));
  }
  return Allocation(std::move(owner), original_agents);
}

}  // namespace efx
