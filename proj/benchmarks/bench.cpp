#include <benchmark/benchmark.h>

#include "efx/dc.hpp"
#include "efx/extension.hpp"
#include "efx/fixedpoint.hpp"
#include "efx/generate.hpp"
#include "efx/lovasz.hpp"
#include "efx/oracle.hpp"

namespace {

efx::Instance instance(std::size_t n, std::size_t m) {
  return efx::generate_instance(n, m, efx::ValueDistribution::uniform01, 1);
}

efx::DualPoint box_point(const efx::Instance& inst) {
  efx::Engine engine = efx::make_engine(2);
  return efx::random_start(inst.items(), inst.agents(),
                           efx::EncodingConstant::for_instance(inst), engine);
}

void BM_DcObjective(benchmark::State& state) {
  const auto inst = instance(3, static_cast<std::size_t>(state.range(0)));
  const auto y = box_point(inst);
  for (auto _ : state) benchmark::DoNotOptimize(efx::dc_objective(inst, y));
}
BENCHMARK(BM_DcObjective)->Arg(4)->Arg(6)->Arg(12);

void BM_ShiftMatrix(benchmark::State& state) {
  const auto inst = instance(3, static_cast<std::size_t>(state.range(0)));
  const auto y = box_point(inst);
  for (auto _ : state) benchmark::DoNotOptimize(efx::envy_shift_matrix(inst, y));
}
BENCHMARK(BM_ShiftMatrix)->Arg(4)->Arg(6)->Arg(12);

void BM_DcaLp(benchmark::State& state) {
  const auto inst = instance(static_cast<std::size_t>(state.range(0)),
                             static_cast<std::size_t>(state.range(1)));
  const auto y = box_point(inst);
  const auto model =
      efx::build_dca_lp(inst, efx::row_argmax(y), efx::EncodingConstant::for_instance(inst));
  for (auto _ : state) benchmark::DoNotOptimize(efx::solve_lp(model.lp));
}
BENCHMARK(BM_DcaLp)->Args({2, 4})->Args({3, 4})->Args({3, 6})->Unit(benchmark::kMillisecond);

void BM_Oracle(benchmark::State& state) {
  const auto inst = instance(3, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(efx::enumerate_efx(inst, {0}));
}
BENCHMARK(BM_Oracle)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_EnvyBound(benchmark::State& state) {
  const auto inst = instance(3, static_cast<std::size_t>(state.range(0)));
  const auto x = efx::FractionalPoint::uniform(inst.items(), inst.agents());
  for (auto _ : state) {
    benchmark::DoNotOptimize(efx::expected_envy_bound(inst, x, efx::InverseTemperature(100)));
  }
}
BENCHMARK(BM_EnvyBound)->Arg(4)->Arg(6)->Arg(12);

}  // namespace

BENCHMARK_MAIN();
