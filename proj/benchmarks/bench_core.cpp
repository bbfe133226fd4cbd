#include <benchmark/benchmark.h>

#include <vector>

#include "monocone/cone_projection.hpp"
#include "monocone/experiments.hpp"
#include "monocone/noise_models.hpp"
#include "monocone/rng.hpp"
#include "monocone/walk_geometry.hpp"

namespace {

std::vector<double> random_sequence(std::size_t n, std::uint64_t seed) {
    monocone::SplitMix64 gen(seed);
    std::vector<double> out(n);
    for (auto& v : out) v = gen.next_gaussian();
    return out;
}

void BM_ProjectMonotone(benchmark::State& state) {
    const auto z = random_sequence(static_cast<std::size_t>(state.range(0)), 1);
    for (auto _ : state) benchmark::DoNotOptimize(monocone::project_monotone(z));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ProjectMonotone)->RangeMultiplier(8)->Range(16, 65536)->Complexity(benchmark::oN);

void BM_ProjectMonotoneMinmax(benchmark::State& state) {
    const auto z = random_sequence(static_cast<std::size_t>(state.range(0)), 2);
    for (auto _ : state) benchmark::DoNotOptimize(monocone::project_monotone_minmax(z));
}
BENCHMARK(BM_ProjectMonotoneMinmax)->Arg(64)->Arg(256);

void BM_GreatestConvexMinorant(benchmark::State& state) {
    const auto path = monocone::cumulative_sums(
        random_sequence(static_cast<std::size_t>(state.range(0)), 3));
    for (auto _ : state) benchmark::DoNotOptimize(monocone::greatest_convex_minorant(path));
}
BENCHMARK(BM_GreatestConvexMinorant)->Arg(4096)->Arg(65536);

void BM_OccupationQuantile(benchmark::State& state) {
    const monocone::WalkPath path = monocone::to_unit_interval(
        monocone::cumulative_sums(random_sequence(10000, 4)));
    for (auto _ : state) benchmark::DoNotOptimize(monocone::occupation_quantile(path, 0.5));
}
BENCHMARK(BM_OccupationQuantile);

void BM_Sample(benchmark::State& state) {
    const monocone::NoiseSpec specs[] = {
        monocone::NoiseSpec::iid_gaussian(100, 7),
        monocone::NoiseSpec::iid_rademacher(100, 7),
        monocone::NoiseSpec::iid_centered_exponential(100, 7),
        monocone::NoiseSpec::iid_student_t(100, 5.0, 7),
        monocone::NoiseSpec::equicorrelated_gaussian(100, 0.5, 7),
    };
    const monocone::NoiseSpec& spec = specs[state.range(0)];
    std::uint64_t replicate = 0;
    for (auto _ : state) benchmark::DoNotOptimize(monocone::sample(spec, replicate++));
}
BENCHMARK(BM_Sample)->DenseRange(0, 4);

void BM_KsTwoSample(benchmark::State& state) {
    const auto a = random_sequence(20000, 5);
    const auto b = random_sequence(20000, 6);
    for (auto _ : state) benchmark::DoNotOptimize(monocone::ks_two_sample(a, b, 0.01));
}
BENCHMARK(BM_KsTwoSample);

void BM_SlopeLawExact(benchmark::State& state) {
    const std::vector<double> base{0.01, -0.02, 0.04, -0.08, 0.16, -0.32};
    for (auto _ : state)
        benchmark::DoNotOptimize(monocone::verify_slope_law_exact(base, 3));
}
BENCHMARK(BM_SlopeLawExact);

}  // namespace

BENCHMARK_MAIN();
