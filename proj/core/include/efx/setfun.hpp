#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "efx/instance.hpp"

namespace efx {

inline constexpr std::size_t kMaxGroundSet = 64;

// Subset of a ground set of at most 64 elements, stored as a bitmask.
class ItemSet {
 public:
  constexpr ItemSet() = default;
  constexpr explicit ItemSet(std::uint64_t bits) : bits_(bits) {}

  static ItemSet full(std::size_t size);
  static ItemSet of(std::initializer_list<std::size_t> elements);

  constexpr bool contains(std::size_t e) const { return (bits_ >> e) & 1u; }
  constexpr ItemSet with(std::size_t e) const { return ItemSet(bits_ | (std::uint64_t{1} << e)); }
  constexpr ItemSet without(std::size_t e) const {
    return ItemSet(bits_ & ~(std::uint64_t{1} << e));
  }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool subset_of(ItemSet other) const { return (bits_ & ~other.bits_) == 0; }

  std::vector<std::size_t> elements() const;

  friend constexpr bool operator==(ItemSet, ItemSet) = default;

 private:
  std::uint64_t bits_ = 0;
};

// One bundle per agent; need not be a partition.
using BundleProfile = std::vector<ItemSet>;

BundleProfile bundles_of(const Allocation& alloc);

struct BundleValue {
  double sum = 0.0;
  std::optional<double> min_item;  // empty for the empty bundle
};

BundleValue bundle_value(const Instance& inst, std::size_t agent, ItemSet bundle);

// v_i(S) = sum_{k in S} v_ki.
double additive_value(const Instance& inst, std::size_t agent, ItemSet bundle);

// f_i(S) = v_i(S) - min_{k in S} v_ki, the value of S after dropping its least
// valuable item; 0 for the empty set. Submodular in S.
double reduced_value(const Instance& inst, std::size_t agent, ItemSet bundle);

// u_ij(X) = f_i(X_j) - v_i(X_i). Requires i != j.
double pair_envy(const Instance& inst, std::size_t i, std::size_t j, const BundleProfile& x);
double pair_envy(const Instance& inst, std::size_t i, std::size_t j, const Allocation& alloc);

// Nonnegative monotone form on a normalized instance:
// f_i(X_j) + sum_{l != i} v_i(X_l), which is pair_envy + 1 on partitions.
// Throws std::invalid_argument for an unnormalized instance.
double pair_envy_shifted(const Instance& inst, std::size_t i, std::size_t j,
                         const BundleProfile& x);
double pair_envy_shifted(const Instance& inst, std::size_t i, std::size_t j,
                         const Allocation& alloc);

enum class EnvyForm {
  raw,      // max u_ij, EFX iff <= 0
  shifted,  // max of the monotone form, EFX iff <= 1 (normalized only)
};

double efx_threshold(EnvyForm form);

// F(X) = max over ordered pairs i != j.
double max_pair_envy(const Instance& inst, const Allocation& alloc, EnvyForm form);
double max_pair_envy(const Instance& inst, const BundleProfile& x, EnvyForm form);

}  // namespace efx
