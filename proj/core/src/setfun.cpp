#include "efx/setfun.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace efx {

namespace {

void check_pair(const Instance& inst, std::size_t i, std::size_t j) {
  if (i >= inst.agents() || j >= inst.agents()) {
    throw std::out_of_range("agent index out of range");
  }
  if (i == j) throw std::invalid_argument("pair envy needs two distinct agents");
}

void check_bundle(const Instance& inst, ItemSet bundle) {
  if (inst.items() < kMaxGroundSet && !bundle.subset_of(ItemSet::full(inst.items()))) {
    throw std::out_of_range("bundle contains an item outside the instance");
  }
}

}  // namespace

ItemSet ItemSet::full(std::size_t size) {
  if (size > kMaxGroundSet) throw std::invalid_argument("ItemSet supports at most 64 elements");
  return ItemSet(size == kMaxGroundSet ? ~std::uint64_t{0} : (std::uint64_t{1} << size) - 1);
}

ItemSet ItemSet::of(std::initializer_list<std::size_t> elements) {
  ItemSet s;
  for (std::size_t e : elements) s = s.with(e);
  return s;
}

std::vector<std::size_t> ItemSet::elements() const {
  std::vector<std::size_t> out;
  for (std::uint64_t b = bits_; b != 0; b &= b - 1) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
  }
  return out;
}

BundleProfile bundles_of(const Allocation& alloc) {
  if (alloc.items() > kMaxGroundSet) {
    throw std::invalid_argument("bundle profiles support at most 64 items");
  }
  BundleProfile x(alloc.agents());
  for (std::size_t k = 0; k < alloc.items(); ++k) {
    x[alloc.owner(k)] = x[alloc.owner(k)].with(k);
  }
  return x;
}

BundleValue bundle_value(const Instance& inst, std::size_t agent, ItemSet bundle) {
  if (agent >= inst.agents()) throw std::out_of_range("agent index out of range");
  check_bundle(inst, bundle);
  BundleValue bv;
  for (std::size_t k : bundle.elements()) {
    const double v = inst.value(k, agent);
    bv.sum += v;
    bv.min_item = bv.min_item ? std::min(*bv.min_item, v) : v;
  }
  return bv;
}

double additive_value(const Instance& inst, std::size_t agent, ItemSet bundle) {
  return bundle_value(inst, agent, bundle).sum;
}

double reduced_value(const Instance& inst, std::size_t agent, ItemSet bundle) {
  const BundleValue bv = bundle_value(inst, agent, bundle);
  return bv.min_item ? bv.sum - *bv.min_item : 0.0;
}

double pair_envy(const Instance& inst, std::size_t i, std::size_t j, const BundleProfile& x) {
  check_pair(inst, i, j);
  return reduced_value(inst, i, x.at(j)) - additive_value(inst, i, x.at(i));
}

double pair_envy(const Instance& inst, std::size_t i, std::size_t j, const Allocation& alloc) {
  check_compatible(inst, alloc);
  return pair_envy(inst, i, j, bundles_of(alloc));
}

double pair_envy_shifted(const Instance& inst, std::size_t i, std::size_t j,
                         const BundleProfile& x) {
  check_pair(inst, i, j);
  if (!inst.normalized()) {
    throw std::invalid_argument("shifted pair envy requires a normalized instance");
  }
  double others = 0.0;
  for (std::size_t l = 0; l < x.size(); ++l) {
    if (l != i) others += additive_value(inst, i, x[l]);
  }
  return reduced_value(inst, i, x.at(j)) + others;
}

double pair_envy_shifted(const Instance& inst, std::size_t i, std::size_t j,
                         const Allocation& alloc) {
  check_compatible(inst, alloc);
  return pair_envy_shifted(inst, i, j, bundles_of(alloc));
}

double efx_threshold(EnvyForm form) { return form == EnvyForm::raw ? 0.0 : 1.0; }

double max_pair_envy(const Instance& inst, const BundleProfile& x, EnvyForm form) {
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < inst.agents(); ++i) {
    for (std::size_t j = 0; j < inst.agents(); ++j) {
      if (i == j) continue;
      const double u = form == EnvyForm::raw ? pair_envy(inst, i, j, x)
                                             : pair_envy_shifted(inst, i, j, x);
      worst = std::max(worst, u);
    }
  }
  return worst;
}

double max_pair_envy(const Instance& inst, const Allocation& alloc, EnvyForm form) {
  check_compatible(inst, alloc);
  return max_pair_envy(inst, bundles_of(alloc), form);
}

}  // namespace efx
