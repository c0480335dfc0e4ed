#include <benchmark/benchmark.h>

#include "qsteer/channels.hpp"
#include "qsteer/cloak.hpp"
#include "qsteer/steering.hpp"

namespace {

using namespace qsteer;

void BM_SteeringExactDephasing(benchmark::State& state) {
  const ChannelSpec channel = ChannelSpec::dephasing(1.0);
  const auto bases = default_bases(static_cast<int>(state.range(0)));
  const SteeringTask task(channel, bases, 0.7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(steering_exact(task).value);
  }
}
BENCHMARK(BM_SteeringExactDephasing)->Arg(2)->Arg(3);

void BM_SteeringExactCoupling(benchmark::State& state) {
  const ChannelSpec channel = ChannelSpec::exchange_coupling(1.0);
  const auto bases = default_bases(static_cast<int>(state.range(0)));
  const SteeringTask task(channel, bases, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(steering_exact(task).value);
  }
}
BENCHMARK(BM_SteeringExactCoupling)->Arg(2)->Arg(3);

void BM_SteeringSampled(benchmark::State& state) {
  const ChannelSpec channel = ChannelSpec::dephasing(1.0);
  const SteeringTask task(channel, default_bases(2), 0.7);
  const auto shots = static_cast<std::uint64_t>(state.range(0));
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(steering_sampled(task, shots, seed++).value);
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(shots) * 2);
}
BENCHMARK(BM_SteeringSampled)->Range(1 << 10, 1 << 20);

void BM_IntegratorDephasing(benchmark::State& state) {
  const ChannelSpec channel = ChannelSpec::dephasing(1.0);
  const DensityMatrix rho = DensityMatrix::maximally_mixed(2);
  const IntegratorConfig cfg{static_cast<int>(state.range(0))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate_fixed_step(channel, rho, 1.0, cfg));
  }
}
BENCHMARK(BM_IntegratorDephasing)->Range(100, 100000);

void BM_IntegratorCoupling(benchmark::State& state) {
  const ChannelSpec channel = ChannelSpec::exchange_coupling(1.0);
  const DensityMatrix rho = DensityMatrix::maximally_mixed(2);
  const IntegratorConfig cfg{static_cast<int>(state.range(0))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate_fixed_step(channel, rho, 1.0, cfg));
  }
}
BENCHMARK(BM_IntegratorCoupling)->Range(100, 100000);

void BM_Trajectory(benchmark::State& state) {
  const CloakGeometry geom(0.5, 1.0, 5.0, 1.0);
  const int samples = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(trajectory(geom, 0.3, samples));
  }
}
BENCHMARK(BM_Trajectory)->Range(16, 16384);

}  // namespace

BENCHMARK_MAIN();
