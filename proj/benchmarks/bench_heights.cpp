#include "arithdyn/algebraic.hpp"
#include "arithdyn/projective.hpp"

#include <benchmark/benchmark.h>

using namespace arithdyn;

static void BM_Resultant(benchmark::State& state) {
    const unsigned d = static_cast<unsigned>(state.range(0));
    std::vector<Int> u(d + 1), v(d + 1);
    for (unsigned i = 0; i <= d; ++i) {
        u[i] = static_cast<long>(3 * i + 1) % 7 - 3;
        v[i] = static_cast<long>(5 * i + 2) % 9 - 4;
    }
    u[0] = 1;
    v[d] = 1;
    const BinaryForm fu(d, u), fv(d, v);
    for (auto _ : state) benchmark::DoNotOptimize(resultant(fu, fv));
}
BENCHMARK(BM_Resultant)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

static void BM_CyclotomicRoots(benchmark::State& state) {
    const IntPoly p = cyclotomic(static_cast<unsigned>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(complex_roots(p));
}
BENCHMARK(BM_CyclotomicRoots)->Arg(11)->Arg(101)->Arg(499);

static void BM_MahlerLehmer(benchmark::State& state) {
    const IntPoly p{1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1};
    for (auto _ : state) benchmark::DoNotOptimize(mahler_measure(p));
}
BENCHMARK(BM_MahlerLehmer);

static void BM_RootOfUnity(benchmark::State& state) {
    const AlgebraicNumber xi(cyclotomic(static_cast<unsigned>(state.range(0))));
    for (auto _ : state) benchmark::DoNotOptimize(is_root_of_unity(xi));
}
BENCHMARK(BM_RootOfUnity)->Arg(30)->Arg(97);

static void BM_CountPoints(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(count_points(1, state.range(0)));
}
BENCHMARK(BM_CountPoints)->Arg(100)->Arg(1000);

static void BM_EnumeratePlane(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_points(2, state.range(0)));
}
BENCHMARK(BM_EnumeratePlane)->Arg(10)->Arg(40);
