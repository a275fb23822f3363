#include <benchmark/benchmark.h>

#include <subsym/density.hpp>
#include <subsym/mc.hpp>
#include <subsym/pricing.hpp>

using namespace subsym;

namespace {

const TcbmModel kTempered{{-0.5, 1.0}, TemperedStableSubordinator{1.0, 2.0, 0.5}, 0.03};
const TcbmModel kStable{{0.0, 1.0}, StableSubordinator{1.0, 0.5}, 0.0};
const MarketSpec kMkt{0.05, 0.02, 100.0};

void BM_ComposedExponent(benchmark::State& state) {
    Complex z{1.7, -0.4};
    for (auto _ : state) benchmark::DoNotOptimize(tcbm_char_exponent(kTempered, z));
}
BENCHMARK(BM_ComposedExponent);

void BM_NamedExponent(benchmark::State& state) {
    const CgmyModel m{1, 2, 3, 0.5};
    for (auto _ : state) benchmark::DoNotOptimize(named_char_exponent(m, Complex{1.7, -0.4}));
}
BENCHMARK(BM_NamedExponent);

void BM_ClockTimeDensityStable(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(subordinated_levy_density(kStable, 0.7));
}
BENCHMARK(BM_ClockTimeDensityStable);

void BM_ClockTimeDensityTempered(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(subordinated_levy_density(kTempered, 0.7));
}
BENCHMARK(BM_ClockTimeDensityTempered);

void BM_LkExponentOnDensity(benchmark::State& state) {
    const LevyTriplet1D t = levy_triplet(kTempered);
    const LkOptions lk{1e-7, 1e-6, 1e-3, 16.0, 1e6};
    for (auto _ : state) benchmark::DoNotOptimize(levy_khintchine_exponent(t, 2.0, lk));
}
BENCHMARK(BM_LkExponentOnDensity)->Unit(benchmark::kMillisecond);

void BM_PriceCall(benchmark::State& state) {
    const OptionSpec o{110.0, 1.0, OptionKind::call};
    for (auto _ : state) benchmark::DoNotOptimize(price_european(kTempered, kMkt, o));
}
BENCHMARK(BM_PriceCall)->Unit(benchmark::kMillisecond);

void BM_StableIncrement(benchmark::State& state) {
    auto rng = path_stream(1, 0);
    const SubordinatorSpec s = StableSubordinator{1.0, 0.5};
    for (auto _ : state) benchmark::DoNotOptimize(sample_subordinator_increment(s, 0.01, rng));
}
BENCHMARK(BM_StableIncrement);

void BM_TemperedIncrement(benchmark::State& state) {
    auto rng = path_stream(1, 0);
    const SubordinatorSpec s = TemperedStableSubordinator{1.0, 2.0, 0.5};
    for (auto _ : state) benchmark::DoNotOptimize(sample_subordinator_increment(s, 0.01, rng));
}
BENCHMARK(BM_TemperedIncrement);

void BM_SimulatePaths(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(simulate_paths(kTempered, 1.0, 16, state.range(0), 7));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulatePaths)->Arg(64)->Arg(512)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
