#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "wzbc/binary.hpp"
#include "wzbc/dmc_regions.hpp"
#include "wzbc/gaussian.hpp"
#include "wzbc/infotheory.hpp"
#include "wzbc/optimize.hpp"

using namespace wzbc;

static void BM_Envelope(benchmark::State& state)
{
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Point2> pts(static_cast<std::size_t>(state.range(0)));
    for (auto& p : pts)
        p = {u(rng), u(rng)};
    for (auto _ : state)
        benchmark::DoNotOptimize(lower_convex_envelope(pts));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Envelope)->Range(1 << 8, 1 << 18);

static void BM_GaussianLdsSweep(benchmark::State& state)
{
    const GaussianProblem g{1.0, {1.0, 0.5}, {0.8, 0.4}, Rational(1)};
    LdsSweepOptions so;
    so.nu_points = so.gamma_points = static_cast<std::size_t>(state.range(0));
    so.threads = 1;
    for (auto _ : state)
        benchmark::DoNotOptimize(gaussian_lds_sweep(g, {0, 1}, so));
}
BENCHMARK(BM_GaussianLdsSweep)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

static void BM_BinaryLdsRegion(benchmark::State& state)
{
    const BinaryProblem b{{0.05, 0.1}, {0.2, 0.1}, Rational(1)};
    for (auto _ : state)
        benchmark::DoNotOptimize(binary_lds_region(b, static_cast<std::size_t>(state.range(0)), 1));
}
BENCHMARK(BM_BinaryLdsRegion)->Arg(11)->Arg(21)->Unit(benchmark::kMillisecond);

static void BM_BinarySeparateRegion(benchmark::State& state)
{
    const BinaryProblem b{{0.05, 0.1}, {0.2, 0.1}, Rational(1)};
    for (auto _ : state)
        benchmark::DoNotOptimize(binary_separate_region(b, static_cast<std::size_t>(state.range(0)), 1));
}
BENCHMARK(BM_BinarySeparateRegion)->Arg(11)->Arg(21)->Unit(benchmark::kMillisecond);

static void BM_MutualInformation(benchmark::State& state)
{
    const SchemeInputs in = binary_superposition_inputs(0.05, 0.1, {0.3, 0.2, AuxChoice::t_equals_uc_xor_ur});
    const JointDistribution j = in.joint.with_child({"Vc", 2}, "U", in.channel_c).with_child({"Vr", 2}, "U", in.channel_r);
    for (auto _ : state)
        benchmark::DoNotOptimize(mutual_information(j, {"T"}, {"Vr"}, {"Ur"}));
}
BENCHMARK(BM_MutualInformation);

static void BM_LdsRateTriple(benchmark::State& state)
{
    const SchemeInputs in = binary_superposition_inputs(0.05, 0.1, {0.3, 0.2, AuxChoice::t_equals_uc_xor_ur});
    for (auto _ : state)
        benchmark::DoNotOptimize(lds_rate_triple(in));
}
BENCHMARK(BM_LdsRateTriple)->Unit(benchmark::kMicrosecond);
BENCHMARK_MAIN();
