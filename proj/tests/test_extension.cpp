#include <cmath>

#include "doctest.h"
#include "efx/extension.hpp"
#include "efx/setfun.hpp"
#include "support.hpp"

using namespace efx;
using efx::testing::alloc;
using efx::testing::example_instance;

namespace {

// The bound evaluated term by term in linear space; fine for small lambda.
double bound_direct(const Instance& inst, const Matrix& x, double lambda) {
  const std::size_t m = inst.items(), n = inst.agents();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      for (std::size_t k = 0; k < m; ++k) {
        double prod = x(k, j);
        for (std::size_t l = 0; l < m; ++l) {
          if (l == k) continue;
          const double v = inst.value(l, i);
          prod *= 1 - x(l, i) - x(l, j) + x(l, i) * std::exp(-lambda * v) +
                  x(l, j) * std::exp(lambda * v);
        }
        total += prod;
      }
    }
  }
  return std::log(total) / lambda;
}

double max_envy(const Instance& inst, const Allocation& x) {
  return max_pair_envy(inst, x, EnvyForm::raw);
}

}  // namespace

TEST_CASE("row-wise rounding of an integral point") {
  const Allocation x = alloc({2, 0, 1, 1}, 3);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    CHECK(rowwise_round(FractionalPoint::from_allocation(x), seed) == x);
  }
}

TEST_CASE("row-wise rounding marginals and independence") {
  const FractionalPoint hat = FractionalPoint::uniform(3, 2);
  const int trials = 10000;
  std::vector<double> freq(3, 0.0);
  double joint = 0.0;
  for (int s = 0; s < trials; ++s) {
    const Allocation a = rowwise_round(hat, static_cast<std::uint64_t>(s));
    for (std::size_t k = 0; k < 3; ++k) freq[k] += a.owner(k) == 0;
    joint += (a.owner(0) == 0) * (a.owner(1) == 0);
  }
  for (double f : freq) CHECK(std::abs(f / trials - 0.5) <= 0.02);
  const double p0 = freq[0] / trials, p1 = freq[1] / trials;
  const double cov = joint / trials - p0 * p1;
  // Product of two Bernoulli(1/2) indicators has variance 3/16.
  CHECK(std::abs(cov) <= 3 * std::sqrt(3.0 / 16.0 / trials));
}

TEST_CASE("bound at an EFX allocation is within ln(nm)/lambda") {
  const Instance i0 = example_instance();
  const FractionalPoint x = FractionalPoint::from_allocation(alloc({0, 1, 1}, 2));
  const double g = expected_envy_bound(i0, x, InverseTemperature(10));
  CHECK(g <= std::log(6.0) / 10 + 1e-12);
  CHECK(g == doctest::Approx(bound_direct(i0, x.matrix(), 10)).epsilon(1e-12));
}

TEST_CASE("log-space bound matches direct evaluation") {
  efx::Engine engine = make_engine(11);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Instance inst = efx::testing::random_instance(3, 4, seed);
    const Matrix x = efx::testing::random_simplex_rows(4, 3, engine);
    for (double lambda : {0.5, 1.0, 5.0, 20.0}) {
      CHECK(expected_envy_bound(inst, FractionalPoint(x), InverseTemperature(lambda)) ==
            doctest::Approx(bound_direct(inst, x, lambda)).epsilon(1e-10));
    }
  }
}

TEST_CASE("bound stays finite for very large lambda") {
  const Instance inst = efx::testing::random_instance(3, 5, 2, true);
  efx::Engine engine = make_engine(3);
  const FractionalPoint x(efx::testing::random_simplex_rows(5, 3, engine));
  const double g = expected_envy_bound(inst, x, InverseTemperature(1e4));
  CHECK(std::isfinite(g));
}

TEST_CASE("a zero factor is caught before taking its logarithm") {
  const Instance inst = efx::testing::random_instance(2, 2, 1);
  const double ninf = -std::numeric_limits<double>::infinity();
  Matrix log_x(2, 2, {0.0, ninf, ninf, ninf});
  CHECK_THROWS_AS(expected_envy_bound_log(inst, log_x, InverseTemperature(1)), std::logic_error);
}

TEST_CASE("Monte Carlo envy under rounding stays below the bound") {
  efx::Engine engine = make_engine(12);
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const Instance inst = efx::testing::random_instance(3, 4, seed + 50);
    const FractionalPoint x(efx::testing::random_simplex_rows(4, 3, engine));
    const int trials = 10000;
    double sum = 0.0, sum_sq = 0.0;
    for (int s = 0; s < trials; ++s) {
      const double e = max_envy(inst, rowwise_round(x, engine));
      sum += e;
      sum_sq += e * e;
    }
    const double mean = sum / trials;
    const double se = std::sqrt(std::max(sum_sq / trials - mean * mean, 0.0) / trials);
    for (double lambda : {1.0, 5.0, 10.0}) {
      CHECK(mean <= expected_envy_bound(inst, x, InverseTemperature(lambda)) + 3 * se);
    }
  }
}

TEST_CASE("softmax map") {
  const FractionalPoint x = softmax_map(DualPoint(Matrix(1, 2, {0.0, -5.0})), InverseTemperature(1));
  CHECK(x(0, 0) == doctest::Approx(1 / (1 + std::exp(-5.0))));
  CHECK(x(0, 1) == doctest::Approx(std::exp(-5.0) / (1 + std::exp(-5.0))));

  const FractionalPoint c = softmax_map(DualPoint(Matrix(2, 4, -3.0)), InverseTemperature(7));
  for (std::size_t i = 0; i < 4; ++i) CHECK(c(1, i) == 0.25);

  efx::Engine engine = make_engine(13);
  for (int t = 0; t < 50; ++t) {
    const Matrix y = efx::testing::random_box_point(3, 3, 40, engine);
    const FractionalPoint s = softmax_map(DualPoint(y), InverseTemperature(100));
    for (std::size_t k = 0; k < 3; ++k) {
      CHECK(s(k, 0) + s(k, 1) + s(k, 2) == doctest::Approx(1.0).epsilon(1e-15));
    }
  }
}

TEST_CASE("DC objective at the example encoding") {
  const Instance i0 = example_instance();
  const DualPoint y = encode_allocation(i0, alloc({0, 1, 1}, 2), EncodingConstant(5));
  CHECK(y.matrix() == Matrix(3, 2, {0, -5, -5, 0, -5, 0}));
  CHECK(dc_objective(i0, y) == doctest::Approx(-0.25));
}

TEST_CASE("DC objective at zero with constant values") {
  for (std::size_t m = 1; m <= 5; ++m) {
    const double c = 0.7;
    const Instance inst(Matrix(m, 3, c));
    CHECK(dc_objective(inst, DualPoint(Matrix(m, 3, 0.0))) ==
          doctest::Approx((static_cast<double>(m) - 1) * c));
  }
}

TEST_CASE("DC objective is invariant under row shifts") {
  efx::Engine engine = make_engine(14);
  std::uniform_real_distribution<double> shift(-3.0, 3.0);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Instance inst = efx::testing::random_instance(3, 4, seed);
    Matrix y = efx::testing::random_box_point(4, 3, 5, engine);
    const double before = dc_objective(inst, DualPoint(y));
    for (std::size_t k = 0; k < 4; ++k) {
      const double c = shift(engine);
      for (double& e : y.row(k)) e += c;
    }
    CHECK(dc_objective(inst, DualPoint(y)) == doctest::Approx(before).epsilon(1e-12));
  }
}

TEST_CASE("encoding needs M above 2V") {
  const Instance i0 = example_instance();
  CHECK_THROWS_AS(encode_allocation(i0, alloc({0, 1, 1}, 2), EncodingConstant(4.0)), InputError);
  CHECK_NOTHROW(encode_allocation(i0, alloc({0, 1, 1}, 2), EncodingConstant(4.5)));
  CHECK_THROWS_AS(InverseTemperature(0.0), InputError);
}

TEST_CASE("DC objective at encodings equals the EFX slack") {
  for (std::size_t n : {2u, 3u}) {
    for (std::size_t m = 1; m <= 4; ++m) {
      for (std::uint64_t seed = 0; seed < 4; ++seed) {
        const Instance inst = efx::testing::random_instance(n, m, seed * 13 + m, seed % 2 == 0);
        const EncodingConstant big = EncodingConstant::for_instance(inst);
        efx::testing::for_each_allocation(n, m, [&](const Allocation& x) {
          const double f = dc_objective(inst, encode_allocation(inst, x, big));
          const double slack = efx_slack(inst, x);
          CHECK(std::abs(f - slack) <= 1e-12);
          CHECK((f <= 0.0) == is_efx(inst, x, 0.0).efx);
        });
      }
    }
  }
}

TEST_CASE("extraction inverts encoding and is EFX whenever f <= 0") {
  efx::Engine engine = make_engine(15);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Instance inst = efx::testing::random_instance(3, 5, seed);
    const EncodingConstant big = EncodingConstant::for_instance(inst);
    const Allocation x = random_allocation(5, 3, engine);
    CHECK(extract_allocation(encode_allocation(inst, x, big)) == x);
    for (int t = 0; t < 20; ++t) {
      const DualPoint y(efx::testing::random_box_point(5, 3, big.value(), engine));
      CHECK(efx_slack(inst, extract_allocation(y)) <= dc_objective(inst, y) + 1e-12);
    }
  }
}

TEST_CASE("softmax of an encoding is close to the allocation") {
  const Instance i0 = example_instance();
  const Allocation x = alloc({0, 1, 1}, 2);
  const Matrix target = FractionalPoint::from_allocation(x).matrix();
  for (double lambda : {0.5, 1.0, 3.0}) {
    const FractionalPoint s =
        softmax_map(encode_allocation(i0, x, EncodingConstant(5)), InverseTemperature(lambda));
    CHECK(max_abs_diff(s.matrix(), target) < 2 * std::exp(-lambda * 5));
  }
}

TEST_CASE("limit gaps shrink with lambda") {
  const Instance inst = efx::testing::random_instance(2, 3, 4);
  const DualPoint y(Matrix(3, 2, {-0.3, -1.1, -2.0, -0.4, -0.2, -0.9}));
  const std::vector<double> lambdas{1, 10, 100};
  const auto gaps = limit_gaps(inst, y, lambdas);
  CHECK(gaps[1] < gaps[0]);
  CHECK(gaps[2] < gaps[1]);

  const DualPoint flat(Matrix(3, 2, -1.0));
  const auto flat_gaps = limit_gaps(inst, flat, std::vector<double>{1, 10, 100, 1000});
  CHECK(flat_gaps[3] < flat_gaps[0]);
  CHECK(flat_gaps[3] < 0.05);
}

TEST_CASE("gap at an EFX encoding stays inside the envelope") {
  const Instance i0 = example_instance();
  const DualPoint y = encode_allocation(i0, alloc({0, 1, 1}, 2), EncodingConstant(5));
  const double f = dc_objective(i0, y);
  const std::vector<double> lambdas{10, 100, 1000};
  const auto gaps = limit_gaps(i0, y, lambdas);
  for (std::size_t t = 0; t < lambdas.size(); ++t) {
    CHECK(gaps[t] <= std::log(6.0) / lambdas[t] + std::abs(f) + 1e-12);
  }
}
