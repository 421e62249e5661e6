#include <benchmark/benchmark.h>

#include "breg/ambiguity.hpp"
#include "breg/asymptotics.hpp"
#include "breg/divergence.hpp"

using namespace breg;

static void BM_bregman_value(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    const auto g = make_builtin("neg_entropy", d);
    const SimplexPoint x = SimplexPoint::uniform(d);
    Vector y(static_cast<std::size_t>(d), 1.0 / d);
    y[0] += 0.5 / d;
    y[1] -= 0.5 / d;
    for (auto _ : state) {
        benchmark::DoNotOptimize(bregman_value(g, x.weights(), y));
    }
}
BENCHMARK(BM_bregman_value)->Arg(4)->Arg(64)->Arg(1024);

static void BM_mc_quantile(benchmark::State& state) {
    SpectralLimit spec;
    spec.eigenvalues = {1.0, 1.0, 1.0};
    spec.rank = 3;
    const int k = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(mc_quantile(spec, 0.95, k, 42));
    }
}
BENCHMARK(BM_mc_quantile)->Arg(10000)->Arg(100000);

static void BM_worst_case_linear(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    auto g = std::make_shared<const ConvexGenerator>(make_builtin("neg_entropy", d));
    AmbiguitySet set{SimplexPoint::uniform(d), g, 0.01,
                     ConcentrationProvenance{0.05, BoundForm::mcdiarmid}, 1000, d};
    Vector c(static_cast<std::size_t>(d));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = static_cast<double>(i % 5) * 0.2;
    for (auto _ : state) {
        benchmark::DoNotOptimize(worst_case_linear(set, c).value);
    }
}
BENCHMARK(BM_worst_case_linear)->Arg(4)->Arg(16);

static void BM_limit_spectrum(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    const auto g = make_builtin("neg_entropy", d);
    const SimplexPoint p = SimplexPoint::uniform(d);
    for (auto _ : state) {
        benchmark::DoNotOptimize(limit_spectrum(g, p).rank);
    }
}
BENCHMARK(BM_limit_spectrum)->Arg(4)->Arg(16)->Arg(64);

BENCHMARK_MAIN();
