#include <benchmark/benchmark.h>

#include <sstream>
#include <vector>

#include "awe/experiment.hpp"

namespace {

std::vector<awe::Chunk> sea_chunks(std::size_t count, std::size_t size) {
    auto gen = awe::generate(awe::sea_concept(8.0, 0.05), {}, count * size, 7);
    awe::Chunker chunker(*gen, size, 2);
    std::vector<awe::Chunk> out;
    while (auto c = chunker.next()) out.push_back(std::move(*c));
    return out;
}

}  // namespace

// One training + reweighting round once the ensemble is at capacity.
static void BM_ProcessChunk(benchmark::State& state) {
    awe::EnsembleConfig cfg;
    cfg.chunk_size = static_cast<std::size_t>(state.range(0));
    cfg.capacity = static_cast<std::size_t>(state.range(1));
    const auto chunks = sea_chunks(cfg.capacity + 8, cfg.chunk_size);
    awe::AccuracyWeightedEnsemble ensemble(cfg);
    for (std::size_t k = 0; k < cfg.capacity; ++k) ensemble.process_chunk(chunks[k]);
    std::size_t k = cfg.capacity;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ensemble.process_chunk(chunks[k]));
        k = k + 1 < chunks.size() ? k + 1 : cfg.capacity;
    }
}
BENCHMARK(BM_ProcessChunk)->Args({500, 5})->Args({500, 10})->Args({2000, 5})->Unit(benchmark::kMicrosecond);

static void BM_Predict(benchmark::State& state) {
    awe::EnsembleConfig cfg;
    const auto chunks = sea_chunks(6, 500);
    awe::AccuracyWeightedEnsemble ensemble(cfg);
    for (const auto& c : chunks) ensemble.process_chunk(c);
    std::size_t k = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ensemble.predict(chunks[0].instances[k++ % 500].features));
    }
}
BENCHMARK(BM_Predict);

// Whole chunk-prequential run with every diversity mode enabled.
static void BM_Experiment(benchmark::State& state) {
    const auto cfg = awe::build_config({{"stream", "sea"},
                                        {"instances", std::to_string(state.range(0) * 500)},
                                        {"noise", "0.05"},
                                        {"drift", "sudden@3000:invert"}});
    for (auto _ : state) {
        std::ostringstream out;
        awe::run_experiment(cfg, out);
        benchmark::DoNotOptimize(out.str().size());
    }
}
BENCHMARK(BM_Experiment)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);
