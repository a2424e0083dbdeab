#include "wittlab/cech.hpp"
#include "wittlab/pd.hpp"
#include "wittlab/units.hpp"
#include "wittlab/witt.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace wittlab;

namespace {

void BM_structural_cache(benchmark::State& state) {
    long p = state.range(0);
    unsigned n = static_cast<unsigned>(state.range(1));
    // first call builds, later calls hit the memo; measure the lookup path
    witt_cache(p, n);
    for (auto _ : state) benchmark::DoNotOptimize(&witt_cache(p, n));
}
BENCHMARK(BM_structural_cache)->Args({2, 4})->Args({3, 4})->Args({5, 3});

void BM_witt_mul(benchmark::State& state) {
    long p = state.range(0);
    unsigned n = static_cast<unsigned>(state.range(1));
    auto ctx = WittContext::make(make_integers_mod(pow_int(p, n)), p);
    std::mt19937_64 rng(7);
    auto x = ctx->random(rng, n), y = ctx->random(rng, n);
    for (auto _ : state) benchmark::DoNotOptimize(witt_mul(x, y));
}
BENCHMARK(BM_witt_mul)->Args({2, 4})->Args({3, 4})->Args({5, 3})->Args({7, 2});

void BM_witt_mul_gf4(benchmark::State& state) {
    auto ctx = WittContext::make(make_gf4(), 2);
    unsigned n = static_cast<unsigned>(state.range(0));
    std::mt19937_64 rng(7);
    auto x = ctx->random(rng, n), y = ctx->random(rng, n);
    for (auto _ : state) benchmark::DoNotOptimize(witt_mul(x, y));
}
BENCHMARK(BM_witt_mul_gf4)->Arg(2)->Arg(3)->Arg(4);

void BM_ghost_solve(benchmark::State& state) {
    auto ctx = WittContext::make(make_integers(), 3);
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> d(-9, 9);
    std::vector<Elem> coords;
    for (int i = 0; i < 4; ++i) coords.push_back(ctx->ring()->from_int(d(rng)));
    auto g = ghost(ctx->from_coords(std::move(coords)));
    for (auto _ : state) benchmark::DoNotOptimize(ghost_solve(ctx, g));
}
BENCHMARK(BM_ghost_solve);

void BM_special_unit_inverse(benchmark::State& state) {
    auto ctx = WittContext::make(make_integers_mod(8), 2);
    auto units = enumerate_special_units(ctx, 3);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(invert_special_unit(SpecialUnit(units[i])));
        i = (i + 1) % units.size();
    }
}
BENCHMARK(BM_special_unit_inverse);

void BM_pd_mul(benchmark::State& state) {
    long p = state.range(0);
    auto D = PDAlgebra::make(make_prime_field(p), p, {{"x", true, 2}},
                             (2 * p + 1) * p * p);
    auto a = D->gamma(0, p);
    auto b = D->mul(D->var_power(0, p), D->gamma(0, p - 1));
    for (auto _ : state) benchmark::DoNotOptimize(D->mul(a, b));
}
BENCHMARK(BM_pd_mul)->Arg(2)->Arg(3)->Arg(5);

void BM_cech_build(benchmark::State& state) {
    long p = state.range(0);
    for (auto _ : state) {
        CechComplex cx(p, 3, p * p);
        benchmark::DoNotOptimize(cx.d1(p * p).rows());
    }
}
BENCHMARK(BM_cech_build)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
