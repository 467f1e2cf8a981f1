#include "doctest.h"
#include "efx/fixedpoint.hpp"
#include "efx/lovasz.hpp"
#include "efx/oracle.hpp"
#include "support.hpp"

using namespace efx;
using efx::testing::alloc;
using efx::testing::example_instance;

TEST_CASE("witnesses of the running example") {
  const OracleResult r = enumerate_efx(example_instance(), {0});
  CHECK(r.exists);
  CHECK(r.scanned == 8);
  REQUIRE(r.witness_count == 2);
  CHECK(r.witnesses[0] == alloc({0, 0, 1}, 2));
  CHECK(r.witnesses[1] == alloc({0, 1, 1}, 2));
  CHECK(enumerate_efx(efx::testing::example_raw(), {0}).witnesses == r.witnesses);
}

TEST_CASE("enumeration order and index decoding") {
  CHECK(allocation_at(0, 3, 2) == alloc({0, 0}, 3));
  CHECK(allocation_at(1, 3, 2) == alloc({0, 1}, 3));
  CHECK(allocation_at(3, 3, 2) == alloc({1, 0}, 3));
  CHECK(allocation_at(8, 3, 2) == alloc({2, 2}, 3));
  CHECK(allocation_count(3, 4) == 81);
  CHECK(allocation_count(10, 8) == kOracleLimit + 1);
}

TEST_CASE("witness list agrees with a definition-level scan") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Instance inst = efx::testing::random_instance(2 + seed % 2, 4, seed, seed % 3 == 0);
    std::vector<Allocation> expected;
    efx::testing::for_each_allocation(inst.agents(), 4, [&](const Allocation& x) {
      if (efx::testing::efx_by_definition(inst, x)) expected.push_back(x);
    });
    const OracleResult r = enumerate_efx(inst, {0});
    CHECK(r.witnesses == expected);
    CHECK(r.witness_count == expected.size());
  }
}

TEST_CASE("two agents always admit an EFX allocation") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Instance inst = efx::testing::random_instance(2, 1 + seed % 8, seed);
    CHECK(enumerate_efx(inst, {1}).exists);
  }
}

TEST_CASE("a single item is always EFX") {
  for (std::size_t n = 2; n <= 5; ++n) {
    const OracleResult r = enumerate_efx(efx::testing::random_instance(n, 1, n), {0});
    CHECK(r.witness_count == n);
  }
}

TEST_CASE("minimum envy on the running example") {
  const EnvyMinimum best = min_max_pair_envy(example_instance());
  CHECK(best.value == doctest::Approx(0.75));
  CHECK(best.argmin == alloc({0, 0, 1}, 2));
  const EnvyMinimum raw = min_max_pair_envy(example_instance(), EnvyForm::raw);
  CHECK(raw.value == doctest::Approx(-0.25));
}

TEST_CASE("minimum shifted envy is at most 1 exactly when EFX exists") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Instance inst = normalize(efx::testing::random_instance(3, 4, seed));
    const bool exists = enumerate_efx(inst, {1}).exists;
    CHECK((min_max_pair_envy(inst).value <= 1.0 + kDefaultEfxTolerance) == exists);
  }
}

TEST_CASE("relaxation at the integral minimizer equals the integral minimum") {
  double worst_excess = -1.0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Instance inst = normalize(efx::testing::random_instance(3, 3, seed));
    const EnvyMinimum integral = min_max_pair_envy(inst);
    const Matrix at = FractionalPoint::from_allocation(integral.argmin).matrix();
    CHECK(relax_objective(inst, at).value == doctest::Approx(integral.value).epsilon(1e-12));
    const double relaxed = minimize_relaxation(inst, {2000, 0.5}).value;
    worst_excess = std::max(worst_excess, relaxed - integral.value);
  }
  MESSAGE("largest excess of the descent value over the integral minimum: " << worst_excess);
}

TEST_CASE("existence, encoded objective and T fixed points coincide") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Instance inst = efx::testing::random_instance(3, 3, 300 + seed);
    const EncodingConstant big = EncodingConstant::for_instance(inst);
    double best_f = 1e300;
    bool any_fixed = false;
    efx::testing::for_each_allocation(3, 3, [&](const Allocation& x) {
      const DualPoint y = encode_allocation(inst, x, big);
      best_f = std::min(best_f, dc_objective(inst, y));
      any_fixed |= max_abs_diff(map_T(inst, y).image, y.matrix()) == 0.0;
    });
    const bool exists = enumerate_efx(inst, {1, 0.0}).exists;
    CHECK(exists == (best_f <= 0.0));
    CHECK(exists == any_fixed);
  }
}

TEST_CASE("threaded enumeration matches a single thread") {
  const Instance inst = efx::testing::random_instance(4, 7, 17);
  const OracleResult one = enumerate_efx(inst, {0, kDefaultEfxTolerance, 1});
  for (unsigned t : {2u, 3u, 8u}) {
    const OracleResult many = enumerate_efx(inst, {0, kDefaultEfxTolerance, t});
    CHECK(many.witnesses == one.witnesses);
    CHECK(many.witness_count == one.witness_count);
    CHECK(many.scanned == one.scanned);
  }
}

TEST_CASE("cap truncates the list but not the count") {
  const Instance inst = efx::testing::random_instance(3, 6, 4);
  const OracleResult all = enumerate_efx(inst, {0});
  REQUIRE(all.witness_count > 5);
  const OracleResult capped = enumerate_efx(inst, {5});
  CHECK(capped.witnesses.size() == 5);
  CHECK(capped.witness_count == all.witness_count);
  CHECK(std::equal(capped.witnesses.begin(), capped.witnesses.end(), all.witnesses.begin()));
}

TEST_CASE("the enumeration guard refuses oversized instances") {
  const Instance inst = efx::testing::random_instance(10, 8, 1);
  CHECK_THROWS_AS(enumerate_efx(inst), OracleTooLarge);
  CHECK_THROWS_AS(min_max_pair_envy(normalize(inst)), OracleTooLarge);
  CHECK(allocation_count(10, 7) == kOracleLimit);
}
