// Microbenchmarks for the hot paths of a sweep: distance computation,
// affinity calibration, a single gradient evaluation, trustworthiness, and
// a short end-to-end optimization.

#include <benchmark/benchmark.h>

#include "dimcal/metrics.hpp"
#include "dimcal/neighbors.hpp"
#include "dimcal/rng.hpp"
#include "dimcal/tsne.hpp"

namespace {

dimcal::Matrix gaussian_cloud(dimcal::Index n, dimcal::Index p, std::uint64_t seed) {
    dimcal::Rng rng(seed);
    dimcal::Matrix m(n, p);
    for (dimcal::Index i = 0; i < n; ++i)
        for (dimcal::Index j = 0; j < p; ++j) m(i, j) = rng.normal();
    return m;
}

void bm_pairwise_distances(benchmark::State& state) {
    const auto data = gaussian_cloud(state.range(0), 10, 1);
    for (auto _ : state) {
        auto dist = dimcal::pairwise_distances(data);
        benchmark::DoNotOptimize(dist.values.data());
    }
}
BENCHMARK(bm_pairwise_distances)->Arg(200)->Arg(500);

void bm_affinity_calibration(benchmark::State& state) {
    const auto dist = dimcal::pairwise_distances(gaussian_cloud(state.range(0), 10, 2));
    for (auto _ : state) {
        auto model = dimcal::compute_affinities(dist, 30.0);
        benchmark::DoNotOptimize(model.joint.data());
    }
}
BENCHMARK(bm_affinity_calibration)->Arg(200)->Arg(500);

void bm_kl_gradient(benchmark::State& state) {
    const dimcal::Index n = state.range(0);
    const auto model =
        dimcal::compute_affinities(dimcal::pairwise_distances(gaussian_cloud(n, 10, 3)), 30.0);
    const auto layout = gaussian_cloud(n, 2, 4);
    for (auto _ : state) {
        auto grad = dimcal::kl_gradient(model.joint, layout);
        benchmark::DoNotOptimize(grad.data());
    }
}
BENCHMARK(bm_kl_gradient)->Arg(200)->Arg(500);

void bm_trustworthiness(benchmark::State& state) {
    const dimcal::Index n = state.range(0);
    const auto reference = gaussian_cloud(n, 10, 5);
    const auto embedding = gaussian_cloud(n, 2, 6);
    for (auto _ : state) {
        auto result = dimcal::trustworthiness(reference, embedding, 10);
        benchmark::DoNotOptimize(result.value);
    }
}
BENCHMARK(bm_trustworthiness)->Arg(200)->Arg(500);

void bm_tsne_run(benchmark::State& state) {
    const auto data = gaussian_cloud(100, 10, 7);
    dimcal::TsneOptions opt;
    opt.perplexity = 20.0;
    opt.max_iter = 250;
    for (auto _ : state) {
        auto run = dimcal::run_tsne(data, opt);
        benchmark::DoNotOptimize(run.final_kl);
    }
}
BENCHMARK(bm_tsne_run)->Unit(benchmark::kMillisecond);

} // namespace
