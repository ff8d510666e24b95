#include <benchmark/benchmark.h>

#include <cmath>

#include "cone_exit/kernel.hpp"
#include "cone_exit/spectral.hpp"

using namespace cone_exit;

namespace {

// Argument: z = |x||y|/t scaled by 10.
void BM_HeatKernelWedge(benchmark::State& state) {
    const Wedge w(2 * kPi / 3);
    const double z = state.range(0) / 10.0;
    const Vec2 x{std::cos(0.7), std::sin(0.7)};
    const Vec2 y{z * std::cos(1.4), z * std::sin(1.4)};
    for (auto _ : state) benchmark::DoNotOptimize(heat_kernel_wedge(w, 1.0, x, y));
}
BENCHMARK(BM_HeatKernelWedge)->Arg(1)->Arg(10)->Arg(100)->Arg(1000);

void BM_HeatKernelQuarter(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(heat_kernel_quarter(1.0, Vec2{0.7, 1.2}, Vec2{1.5, 0.4}));
}
BENCHMARK(BM_HeatKernelQuarter);

void BM_NormalDerivative(benchmark::State& state) {
    const Wedge w(2 * kPi / 3);
    const Vec2 x{std::cos(0.7), std::sin(0.7)};
    for (auto _ : state) benchmark::DoNotOptimize(normal_derivative_wedge(w, x, Vec2{2.0, 0.0}));
}
BENCHMARK(BM_NormalDerivative);

void BM_SeriesRow(benchmark::State& state) {
    const double z = state.range(0) / 10.0;
    for (auto _ : state) {
        const WedgeSeriesRow row(2.0, 0.9, z, SeriesTolerance{});
        benchmark::DoNotOptimize(row.sum(1.1));
    }
}
BENCHMARK(BM_SeriesRow)->Arg(1)->Arg(100)->Arg(1000);

void BM_BesselI(benchmark::State& state) {
    const double x = static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(bessel_i(2.5, x));
}
BENCHMARK(BM_BesselI)->Arg(1)->Arg(30)->Arg(300);

}  // namespace
