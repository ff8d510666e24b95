#include <benchmark/benchmark.h>

#include <cmath>

#include "cone_exit/asymptotics.hpp"
#include "cone_exit/survival.hpp"

using namespace cone_exit;

namespace {

void BM_SurvivalWedgeExact(benchmark::State& state) {
    const Wedge w(2 * kPi / 3);
    const Vec2 x{std::cos(w.beta() / 2), std::sin(w.beta() / 2)};
    const double t = static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(survival_wedge_exact(w, Vec2{1.0, 0.0}, x, t).p);
}
BENCHMARK(BM_SurvivalWedgeExact)->Arg(1)->Arg(8)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_SurvivalWedgeScaled(benchmark::State& state) {
    const Wedge w(2 * kPi / 3);
    const Vec2 x{std::cos(w.beta() / 2), std::sin(w.beta() / 2)};
    for (auto _ : state) benchmark::DoNotOptimize(survival_wedge_scaled(w, Vec2{1.0, 0.0}, x, 8.0).p);
}
BENCHMARK(BM_SurvivalWedgeScaled)->Unit(benchmark::kMillisecond);

void BM_SurvivalHalfline(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(survival_halfline(1.0, -1.0, 50.0).p);
}
BENCHMARK(BM_SurvivalHalfline);

void BM_AsymptoticLaw(benchmark::State& state) {
    const Wedge w(2 * kPi / 3);
    const Vec2 x{std::cos(w.beta() / 2), std::sin(w.beta() / 2)};
    const Vec2 a{-1.2, -1.6};
    for (auto _ : state) benchmark::DoNotOptimize(asymptotic_law(w, a, x).prefactor);
}
BENCHMARK(BM_AsymptoticLaw);

}  // namespace
