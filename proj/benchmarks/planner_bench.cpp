#include <benchmark/benchmark.h>

#include <numeric>

#include "mdc/baselines.hpp"
#include "mdc/deployment.hpp"
#include "mdc/diffusion.hpp"
#include "mdc/rp_placement.hpp"
#include "mdc/service.hpp"
#include "mdc/two_opt.hpp"

namespace {

using namespace mdc;

void BM_SelectRps(benchmark::State& state)
{
    const auto s = generate_scenario(1, static_cast<int>(state.range(0)), ScenarioTemplate{});
    const auto cands = build_candidates(s, CandidateMode::grid(10));
    for (auto _ : state) {
        auto plan = select_rps(s, cands, 15);
        benchmark::DoNotOptimize(plan.rp_rate_bps.data());
    }
}

void BM_SampleTrajectory(benchmark::State& state)
{
    const auto s = generate_scenario(2, 100, ScenarioTemplate{});
    const auto plan = select_rps(s, build_candidates(s, CandidateMode::grid(10)), 15);
    const auto rps = AreaMap(s.area).normalize(plan.rp_positions);
    const auto schedule = NoiseSchedule::linear(static_cast<int>(state.range(1)));
    const auto denoiser = DenoiserSpec::analytic(nearest_neighbor_tour(plan.rp_positions, s.sink));
    std::uint64_t seed = 0;
    for (auto _ : state) {
        auto x = sample_trajectory(seed++, rps, IntentWeights{}, schedule, denoiser,
                                   static_cast<int>(state.range(0)));
        benchmark::DoNotOptimize(x.points.data());
    }
}

void BM_TwoOpt(benchmark::State& state)
{
    const int m = static_cast<int>(state.range(0));
    const auto s = generate_scenario(3, m, ScenarioTemplate{});
    std::vector<Point2D> pts;
    for (const auto& sensor : s.sensors) pts.push_back(sensor.position);
    const auto start = random_tour(3, m);
    for (auto _ : state) {
        auto tour = two_opt(start, pts, true);
        benchmark::DoNotOptimize(tour.data());
    }
}

void BM_SolveDwell(benchmark::State& state)
{
    const std::vector<double> rates(15, 10000.0 / 3.0);
    const std::vector<double> c(15, 2e6);
    for (auto _ : state) {
        auto sol = solve_dwell(rates, 450.0, c);
        benchmark::DoNotOptimize(sol.tour_time_s);
    }
}

} // namespace

BENCHMARK(BM_SelectRps)->RangeMultiplier(2)->Range(50, 800)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SampleTrajectory)->Args({80, 50})->Args({160, 50})->Args({80, 200})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TwoOpt)->Arg(15)->Arg(50)->Arg(100)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_SolveDwell);
BENCHMARK_MAIN();
