#include <benchmark/benchmark.h>

#include "olct/ambiguity.hpp"
#include "olct/recovery.hpp"
#include "olct/signals.hpp"
#include "olct/transforms.hpp"

namespace {

using olct::ParameterMatrix;
using olct::SampledSignal;

SampledSignal test_signal(std::size_t n) {
    olct::SignalSpec spec;
    spec.kind = olct::SignalKind::random_compact;
    spec.length = n;
    spec.step = 0.25;
    spec.seed = 17;
    return olct::generate_signal(spec);
}

const ParameterMatrix kMatrix{0.8, 1.0, -0.12, 1.1, 0.3, -0.4};

void bench_forward_direct(benchmark::State& state) {
    const auto f = test_signal(static_cast<std::size_t>(state.range(0)));
    const auto grid = olct::olct_fast_grid(f, kMatrix);
    for (auto _ : state)
        benchmark::DoNotOptimize(olct::olct_forward(f, kMatrix, grid));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(bench_forward_direct)->RangeMultiplier(2)->Range(64, 512)->Complexity();

void bench_forward_fast(benchmark::State& state) {
    const auto f = test_signal(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(olct::olct_fast(f, kMatrix));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(bench_forward_fast)->RangeMultiplier(2)->Range(64, 4096)->Complexity();

void bench_ambiguity_surface(benchmark::State& state) {
    const auto f = test_signal(static_cast<std::size_t>(state.range(0)));
    const auto n = static_cast<double>(state.range(0));
    const olct::Grid lags{-n / 8.0 * f.step, f.step, static_cast<std::size_t>(state.range(0)) / 4};
    const olct::Grid mods{-3.0, 0.125, 49};
    for (auto _ : state)
        benchmark::DoNotOptimize(olct::ambiguity(f, lags, mods));
}
BENCHMARK(bench_ambiguity_surface)->RangeMultiplier(2)->Range(64, 512);

void bench_multi_olct_recovery(benchmark::State& state) {
    const auto f = test_signal(static_cast<std::size_t>(state.range(0)));
    std::vector<olct::MagnitudeMeasurement> mags;
    const auto ratios = 2 * f.size();
    for (std::size_t k = 0; k < ratios; ++k) {
        const double a = 0.25 * static_cast<double>(k);
        const ParameterMatrix A{a, 1.0, a - 1.0, 1.0, 0.0, 0.0};
        const auto spec = olct::olct_fast(f, A);
        olct::MagnitudeMeasurement m{A, {}, spec.grid};
        m.mag2.reserve(spec.values.size());
        for (const auto& z : spec.values) m.mag2.push_back(std::norm(z));
        mags.push_back(std::move(m));
    }
    const olct::SupportWindow support{f.origin, f.size(), f.step};
    for (auto _ : state)
        benchmark::DoNotOptimize(olct::recover_from_multi_olct(mags, support));
}
BENCHMARK(bench_multi_olct_recovery)->RangeMultiplier(2)->Range(8, 32)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
