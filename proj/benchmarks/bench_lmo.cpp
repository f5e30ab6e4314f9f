#include <benchmark/benchmark.h>

#include "fwopt/lmo.hpp"
#include "fwopt/rng.hpp"

using namespace fwopt;

static void BM_SimplexLmo(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    SplitMix64 rng(1);
    Point d(n);
    for (double& v : d) v = rng.normal();
    for (auto _ : state) {
        benchmark::DoNotOptimize(lmo_probability_simplex(d));
    }
}
BENCHMARK(BM_SimplexLmo)->Arg(100)->Arg(1000)->Arg(5000);

static void BM_L1BallLmo(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    SplitMix64 rng(2);
    Point d(n);
    for (double& v : d) v = rng.normal();
    for (auto _ : state) {
        benchmark::DoNotOptimize(lmo_l1_ball(d, 1.5));
    }
}
BENCHMARK(BM_L1BallLmo)->Arg(100)->Arg(1000)->Arg(5000);

static void BM_HungarianLmo(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    SplitMix64 rng(3);
    Point cost(n * n);
    for (double& c : cost) c = rng.normal();
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_assignment(cost, n));
    }
    state.SetComplexityN(static_cast<std::int64_t>(n));
}
BENCHMARK(BM_HungarianLmo)->Arg(8)->Arg(32)->Arg(64)->Arg(128)->Arg(256)->Complexity();

static void BM_ActiveVertexScan(benchmark::State& state) {
    // away-vertex selection cost is a linear scan over sparse vertices
    const std::size_t n = 1000;
    SplitMix64 rng(4);
    Point g(n);
    for (double& v : g) v = rng.normal();
    std::vector<Vertex> vertices;
    for (std::size_t i = 0; i < static_cast<std::size_t>(state.range(0)); ++i) {
        vertices.push_back(Vertex::basis(rng.next_below(n), 1.0));
    }
    for (auto _ : state) {
        double best = -1e300;
        for (const Vertex& v : vertices) best = std::max(best, v.dot(g));
        benchmark::DoNotOptimize(best);
    }
}
BENCHMARK(BM_ActiveVertexScan)->Arg(10)->Arg(100)->Arg(1000);
