#include <benchmark/benchmark.h>

#include <array>

#include "cone_exit/montecarlo.hpp"

using namespace cone_exit;

namespace {

template <class D>
void run(benchmark::State& state, const D& domain, std::span<const double> a, std::span<const double> x) {
    McConfig cfg;
    cfg.paths = static_cast<std::uint64_t>(state.range(0));
    cfg.dt = 1e-3;
    cfg.threads = 1;
    for (auto _ : state) benchmark::DoNotOptimize(mc_survival(domain, a, x, 0.25, cfg).p_hat);
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}

void BM_McHalfline(benchmark::State& state) {
    const std::array<double, 1> a{-0.5}, x{0.5};
    run(state, HalfLineDomain{}, a, x);
}
BENCHMARK(BM_McHalfline)->Arg(20000)->Unit(benchmark::kMillisecond);

void BM_McQuarter(benchmark::State& state) {
    const std::array<double, 2> a{0.5, -0.5}, x{0.6, 0.8};
    run(state, QuarterDomain{}, a, x);
}
BENCHMARK(BM_McQuarter)->Arg(20000)->Unit(benchmark::kMillisecond);

void BM_McWedge(benchmark::State& state) {
    const std::array<double, 2> a{-0.3, 0.2}, x{0.2, 0.7};
    run(state, WedgeDomain{Wedge(2.0)}, a, x);
}
BENCHMARK(BM_McWedge)->Arg(20000)->Unit(benchmark::kMillisecond);

}  // namespace
