#include <benchmark/benchmark.h>

#include "avoidkit/couplers.hpp"
#include "avoidkit/generators.hpp"
#include "avoidkit/oracles.hpp"
#include "avoidkit/simulate.hpp"
#include "avoidkit/transport.hpp"
#include "avoidkit/verify.hpp"

using namespace avoidkit;

static void BM_RegularTransport(benchmark::State& state) {
    const auto d = static_cast<std::size_t>(state.range(0));
    // circulant on 4d vertices with offsets 1..d/2 is d-regular
    std::vector<std::size_t> offsets;
    for (std::size_t s = 1; s <= d / 2; ++s) offsets.push_back(s);
    const auto g = circulant_graph(4 * d + 1, offsets);
    const VertexId b = static_cast<VertexId>(2 * d);
    for (auto _ : state) benchmark::DoNotOptimize(build_regular_transport(g, 0, b, 1));
}
BENCHMARK(BM_RegularTransport)->Arg(4)->Arg(8)->Arg(16);

static void BM_SquarefreeTransport(benchmark::State& state) {
    const auto g = heawood_graph();
    for (auto _ : state) benchmark::DoNotOptimize(build_squarefree_transport(g, 0, 2));
}
BENCHMARK(BM_SquarefreeTransport);

static void BM_CubicBlock(benchmark::State& state) {
    const auto g = petersen_graph();
    CubicEngine engine(g);
    Rng rng(1);
    for (auto _ : state) benchmark::DoNotOptimize(engine.block(0, 2, rng));
}
BENCHMARK(BM_CubicBlock);

static void BM_RegularRound(benchmark::State& state) {
    const auto g = circulant_graph(9, {1, 2});
    RegularEngine engine(g);
    Rng rng(1);
    auto s = regular_init(g, 0, std::nullopt, rng);
    for (auto _ : state) {
        const auto out = engine.round(s, rng);
        s = out.next;
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(BM_RegularRound);

static void BM_Simulate(benchmark::State& state) {
    const auto g = petersen_graph();
    const auto ticks = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(simulate(g, EngineKind::none, ticks, 1));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * ticks));
}
BENCHMARK(BM_Simulate)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_ChiSquare(benchmark::State& state) {
    const auto g = petersen_graph();
    const auto traj = simulate(g, EngineKind::none, 100000, 1).trajectory;
    for (auto _ : state) benchmark::DoNotOptimize(chi_square_faithfulness(g, traj));
}
BENCHMARK(BM_ChiSquare)->Unit(benchmark::kMillisecond);

static void BM_Lemma34Oracle(benchmark::State& state) {
    const auto g = circulant_graph(9, {1, 2});
    for (auto _ : state) benchmark::DoNotOptimize(lemma34_oracle(g, 0, 4, 1));
}
BENCHMARK(BM_Lemma34Oracle);

BENCHMARK_MAIN();
