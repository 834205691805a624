#include "arithdyn/dynamics.hpp"
#include "arithdyn/green.hpp"

#include <benchmark/benchmark.h>

using namespace arithdyn;

namespace {

RationalMap bad_reduction_map() {
    return RationalMap(BinaryForm(2, {3, 1, -2}), BinaryForm(2, {1, 0, 6}));
}

}  // namespace

static void BM_CanonicalHeightLocal(benchmark::State& state) {
    const auto f = bad_reduction_map();
    const ProjPointQ x{17, 40};
    const double tol = std::pow(10.0, -static_cast<double>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(canonical_height_local(f, x, tol));
}
BENCHMARK(BM_CanonicalHeightLocal)->Arg(6)->Arg(12);

static void BM_CanonicalHeightGlobal(benchmark::State& state) {
    const auto f = bad_reduction_map();
    const ProjPointQ x{17, 40};
    for (auto _ : state) benchmark::DoNotOptimize(canonical_height_global(f, x, 1e-3, state.range(0)));
}
BENCHMARK(BM_CanonicalHeightGlobal)->Arg(10000)->Arg(100000);

static void BM_Preperiodic(benchmark::State& state) {
    const auto f = RationalMap::quadratic(-1);
    for (auto _ : state) benchmark::DoNotOptimize(preperiodic_points_rational(f));
}
BENCHMARK(BM_Preperiodic);

static void BM_EscapeRate(benchmark::State& state) {
    const EscapeRateField field(RationalMap::quadratic(1));
    Complex z(0.3, 0.7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(field.escape_rate(z, Complex(1)));
        z += Complex(1e-9, 0);
    }
}
BENCHMARK(BM_EscapeRate);

static void BM_MeanPairingRootsOfUnity(benchmark::State& state) {
    const EscapeRateField field(RationalMap::power_map(2));
    const auto pts = EmpiricalMeasure::roots_of_unity(static_cast<unsigned>(state.range(0))).points;
    for (auto _ : state) benchmark::DoNotOptimize(mean_pairing(field, pts));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MeanPairingRootsOfUnity)->RangeMultiplier(4)->Range(16, 1024)->Complexity(benchmark::oNSquared);

static void BM_FeketePowerMap(benchmark::State& state) {
    const EscapeRateField field(RationalMap::power_map(2));
    FeketeOptions opt;
    opt.restarts = 4;
    for (auto _ : state) benchmark::DoNotOptimize(transfinite_diameter(field, static_cast<unsigned>(state.range(0)), opt));
}
BENCHMARK(BM_FeketePowerMap)->Arg(5)->Arg(10);

BENCHMARK_MAIN();
