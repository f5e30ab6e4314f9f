#include <benchmark/benchmark.h>

#include "fwopt/algorithms.hpp"
#include "fwopt/objectives.hpp"

using namespace fwopt;

static void BM_PortfolioGradient(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const PortfolioObjective obj(generate_portfolio(n, 2 * n, ReturnsDistribution::LogNormal, 1));
    const Point x(n, 1.0 / static_cast<double>(n));
    for (auto _ : state) {
        benchmark::DoNotOptimize(obj.gradient(x));
    }
}
BENCHMARK(BM_PortfolioGradient)->Arg(100)->Arg(200)->Arg(500)->Arg(1000);

static void BM_LogisticValue(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const LogisticObjective obj(generate_logistic(5 * n, n, 0.1, 5.0, 2));
    const Point x(n, 0.01);
    for (auto _ : state) {
        benchmark::DoNotOptimize(obj.value(x));
    }
}
BENCHMARK(BM_LogisticValue)->Arg(50)->Arg(100)->Arg(200);

static void BM_MfwIterations(benchmark::State& state) {
    // whole-loop cost: 100 open-loop iterations on a mid-size portfolio
    const PortfolioObjective obj(generate_portfolio(200, 500, ReturnsDistribution::LogNormal, 1));
    const ProbabilitySimplex set(200);
    StopCriteria stop;
    stop.max_iter = 100;
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_mfw(obj, set, set.default_start().dense(200), stop));
    }
}
BENCHMARK(BM_MfwIterations)->Unit(benchmark::kMillisecond);

static void BM_BafwIterations(benchmark::State& state) {
    const PortfolioObjective obj(generate_portfolio(200, 500, ReturnsDistribution::LogNormal, 1));
    const ProbabilitySimplex set(200);
    StopCriteria stop;
    stop.max_iter = 100;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            run_bafw(obj, set, set.default_start(), BacktrackConfig{}, stop));
    }
}
BENCHMARK(BM_BafwIterations)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
