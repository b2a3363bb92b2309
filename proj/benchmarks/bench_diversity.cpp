#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "awe/stream_diversity.hpp"

namespace {

std::vector<awe::Outcome> random_outcomes(std::size_t n, std::size_t L, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<awe::Outcome> v(n * L);
    for (auto& o : v) o = (rng() % 10) < 7 ? awe::Outcome::correct : awe::Outcome::incorrect;
    return v;
}

}  // namespace

// Static measures over one block of N samples.
static void BM_BlockReport(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto L = static_cast<std::size_t>(state.range(1));
    const awe::OracleMatrix oracle(n, L, random_outcomes(n, L, 1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(awe::block_report(oracle));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_BlockReport)->Args({500, 5})->Args({500, 10})->Args({5000, 5});

static void BM_IncrementalUpdate(benchmark::State& state) {
    const auto L = static_cast<std::size_t>(state.range(0));
    const auto rows = random_outcomes(1024, L, 2);
    awe::PairCountState counts(L);
    std::size_t k = 0;
    for (auto _ : state) {
        counts.update({rows.data() + (k++ % 1024) * L, L});
    }
    benchmark::DoNotOptimize(counts.n_seen());
}
BENCHMARK(BM_IncrementalUpdate)->Arg(5)->Arg(10)->Arg(20);

static void BM_WindowPush(benchmark::State& state) {
    const std::size_t L = 5;
    const auto rows = random_outcomes(1024, L, 3);
    awe::WindowState window(L, static_cast<std::size_t>(state.range(0)));
    std::size_t k = 0;
    for (auto _ : state) {
        window.push({rows.data() + (k++ % 1024) * L, L});
    }
    benchmark::DoNotOptimize(window.size());
}
BENCHMARK(BM_WindowPush)->Arg(100)->Arg(1000);

static void BM_FadingUpdate(benchmark::State& state) {
    const auto L = static_cast<std::size_t>(state.range(0));
    const auto rows = random_outcomes(1024, L, 4);
    awe::FadingTracker fading(L, 0.999);
    std::size_t k = 0;
    for (auto _ : state) {
        fading.update({rows.data() + (k++ % 1024) * L, L});
    }
    benchmark::DoNotOptimize(fading.n_fading());
}
BENCHMARK(BM_FadingUpdate)->Arg(5)->Arg(10)->Arg(20);

static void BM_FadingReport(benchmark::State& state) {
    const std::size_t L = 10;
    const auto rows = random_outcomes(1024, L, 5);
    awe::FadingTracker fading(L, 0.999);
    for (std::size_t k = 0; k < 1024; ++k) fading.update({rows.data() + k * L, L});
    for (auto _ : state) {
        benchmark::DoNotOptimize(fading.report(0));
    }
}
BENCHMARK(BM_FadingReport);
