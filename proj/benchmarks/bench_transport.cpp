#include <benchmark/benchmark.h>

#include "breg/rng.hpp"
#include "breg/transport.hpp"

using namespace breg;

namespace {

DiscreteDistribution random_dist(Rng& rng, int size, int dim) {
    std::vector<Vector> atoms;
    Vector weights;
    for (int k = 0; k < size; ++k) {
        Vector a(static_cast<std::size_t>(dim));
        for (double& v : a) v = rng.next_range(-1.0, 1.0);
        atoms.push_back(std::move(a));
        weights.push_back(0.1 + rng.next_unit());
    }
    double s = 0.0;
    for (double w : weights) s += w;
    for (double& w : weights) w /= s;
    return DiscreteDistribution(std::move(atoms), std::move(weights));
}

}  // namespace

static void BM_solve_exact(benchmark::State& state) {
    Rng rng(12345);
    const int n = static_cast<int>(state.range(0));
    const auto src = random_dist(rng, n, 2);
    const auto dst = random_dist(rng, n, 2);
    const Matrix cost = metric_cost_matrix(2.0, src, dst);
    for (auto _ : state) {
        auto plan = solve_exact(cost, src, dst);
        benchmark::DoNotOptimize(plan.cost);
    }
}
BENCHMARK(BM_solve_exact)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

static void BM_solve_sinkhorn(benchmark::State& state) {
    Rng rng(12345);
    const int n = static_cast<int>(state.range(0));
    const auto src = random_dist(rng, n, 2);
    const auto dst = random_dist(rng, n, 2);
    const Matrix cost = metric_cost_matrix(2.0, src, dst);
    for (auto _ : state) {
        auto plan = solve_sinkhorn(cost, src, dst, 0.05, 5000);
        benchmark::DoNotOptimize(plan.cost);
    }
}
BENCHMARK(BM_solve_sinkhorn)->Arg(16)->Arg(64);

static void BM_wasserstein_bregman(benchmark::State& state) {
    Rng rng(777);
    const int n = static_cast<int>(state.range(0));
    const auto g = make_builtin("neg_entropy", 2);
    const auto src = random_dist(rng, n, 2);
    const auto dst = random_dist(rng, n, 2);
    // shift atoms into the positive orthant
    std::vector<Vector> pos_src, pos_dst;
    for (auto a : src.atoms()) {
        for (double& v : a) v += 2.0;
        pos_src.push_back(a);
    }
    for (auto a : dst.atoms()) {
        for (double& v : a) v += 2.0;
        pos_dst.push_back(a);
    }
    const DiscreteDistribution ps(pos_src, src.weights());
    const DiscreteDistribution pd(pos_dst, dst.weights());
    for (auto _ : state) {
        benchmark::DoNotOptimize(wasserstein_bregman(g, ps, pd));
    }
}
BENCHMARK(BM_wasserstein_bregman)->Arg(8)->Arg(32);

BENCHMARK_MAIN();
