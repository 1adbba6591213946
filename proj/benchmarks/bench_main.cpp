#include <benchmark/benchmark.h>

#include "slalom/amplitude.hpp"
#include "slalom/branch_cuts.hpp"
#include "slalom/closest_approach.hpp"

namespace {

using namespace slalom;

void saddle(benchmark::State& state) {
    const FieldParams fp = presets::argon_near_ir();
    double pz = -0.8;
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_saddle({0.1, pz}, fp));
        pz = pz > 0.8 ? -0.8 : pz + 1e-3;
    }
}
BENCHMARK(saddle);

void ca_roots(benchmark::State& state) {
    const FieldParams fp = presets::argon_near_ir();
    const Orbit orbit({0.1, 0.8}, fp);
    const double T = default_detection_time(orbit.saddle(), fp, 2.75);
    const TimeWindow window = default_ca_window(orbit.saddle(), fp, T);
    for (auto _ : state) benchmark::DoNotOptimize(find_ca_roots(orbit, window));
}
BENCHMARK(ca_roots)->Unit(benchmark::kMillisecond);

void branch_points(benchmark::State& state) {
    const FieldParams fp = presets::argon_near_ir();
    const Orbit orbit({0.1, 0.8}, fp);
    const TimeWindow window = first_recollision_window(orbit.saddle(), fp);
    for (auto _ : state) benchmark::DoNotOptimize(find_branch_points(orbit, window));
}
BENCHMARK(branch_points)->Unit(benchmark::kMillisecond);

// Range arg picks the navigator: 0 automatic, 1 standard on a momentum where
// the plain contour is still valid.
void amplitude_single(benchmark::State& state) {
    const FieldParams fp = presets::argon_near_ir();
    AmplitudeOptions opts;
    opts.navigator = state.range(0) == 0 ? Navigator::automatic : Navigator::standard;
    for (auto _ : state) benchmark::DoNotOptimize(amplitude({0.3, 0.4}, fp, opts));
}
BENCHMARK(amplitude_single)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
