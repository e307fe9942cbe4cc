#include <benchmark/benchmark.h>

#include <random>

#include "fixtures.hpp"
#include "flowmap/bundle.hpp"
#include "flowmap/density.hpp"
#include "flowmap/edt.hpp"
#include "flowmap/scene.hpp"
#include "flowmap/smoothing.hpp"

using namespace flowmap;

namespace {

const std::vector<FlowEdge>& flows() {
    static const auto f = fixtures::synthetic_flows();
    return f;
}

void BM_Bundle(benchmark::State& state) {
    const AttractOptions opts{static_cast<int>(state.range(0)), {}};
    for (auto _ : state) benchmark::DoNotOptimize(bundle(flows(), BundleParams{}, opts));
    state.SetLabel(std::to_string(flows().size()) + " flows");
}
BENCHMARK(BM_Bundle)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_CompileFlows(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(compile_flows(flows(), PipelineConfig{}));
}
BENCHMARK(BM_CompileFlows)->Unit(benchmark::kMillisecond);

void BM_Density(benchmark::State& state) {
    const auto mapping = bundle(flows(), BundleParams{}).mapping;
    for (auto _ : state) benchmark::DoNotOptimize(build_density_field(flows(), mapping, 1.5, 11));
}
BENCHMARK(BM_Density)->Unit(benchmark::kMillisecond);

void BM_Edt(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::mt19937_64 rng(1);
    Grid<std::uint8_t> mask(n, n, 0);
    std::bernoulli_distribution on(0.7);
    for (auto& c : mask.data()) c = on(rng);
    mask(0, 0) = 0;
    for (auto _ : state) benchmark::DoNotOptimize(compute_edt(mask));
    state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_Edt)->Arg(32)->Arg(128)->Arg(512);

void BM_SmoothPipeline(benchmark::State& state) {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> jitter(-1.0, 1.0);
    std::vector<GridPoint> poly;
    for (int i = 0; i <= 64; ++i) poly.push_back({i * 1.5 + jitter(rng), 40.0 + 6.0 * std::sin(i / 9.0) + jitter(rng)});
    for (auto _ : state) benchmark::DoNotOptimize(smooth_pipeline(poly));
}
BENCHMARK(BM_SmoothPipeline)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
