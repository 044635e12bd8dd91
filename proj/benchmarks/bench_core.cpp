#include <benchmark/benchmark.h>

#include <vector>

#include <specgame/continuous_games.hpp>
#include <specgame/experiments.hpp>
#include <specgame/learning.hpp>
#include <specgame/matrix_games.hpp>
#include <specgame/power_games.hpp>
#include <specgame/random.hpp>
#include <specgame/spectrum.hpp>

using namespace specgame;

static void BM_WaterFill(benchmark::State& state) {
    const auto k = static_cast<std::size_t>(state.range(0));
    const FrequencyGrid grid(k, static_cast<double>(k));
    Rng rng(1);
    std::vector<double> gain(k), noise(k);
    for (std::size_t i = 0; i < k; ++i) {
        gain[i] = 0.01 + rng.uniform();
        noise[i] = 0.1 + rng.uniform();
    }
    for (auto _ : state) benchmark::DoNotOptimize(water_fill(gain, noise, 10.0, grid));
}
BENCHMARK(BM_WaterFill)->Arg(8)->Arg(64)->Arg(512);

static void BM_IterativeWaterFilling(benchmark::State& state) {
    const EnsembleConfig cfg;
    const auto ch = ensemble_channels(cfg, 0);
    const NoiseProfile noise(2, cfg.grid.bins(), cfg.noise);
    const PowerBudget budgets(cfg.budgets);
    for (auto _ : state) benchmark::DoNotOptimize(iterative_water_filling(ch, noise, budgets, cfg.grid));
}
BENCHMARK(BM_IterativeWaterFilling);

static void BM_StackelbergSearch(benchmark::State& state) {
    const EnsembleConfig cfg;
    const auto ch = ensemble_channels(cfg, 0);
    const NoiseProfile noise(2, cfg.grid.bins(), cfg.noise);
    const PowerBudget budgets(cfg.budgets);
    for (auto _ : state) {
        benchmark::DoNotOptimize(stackelberg_leader_search(0, ch, noise, budgets, cfg.grid, cfg.stackelberg));
    }
}
BENCHMARK(BM_StackelbergSearch)->Unit(benchmark::kMillisecond);

static void BM_OptimizeCe(benchmark::State& state) {
    const auto game = build_discretized_power_game(two_channel_scenario(), static_cast<unsigned>(state.range(0))).game;
    const std::vector<double> w{1.0, 1.0};
    for (auto _ : state) benchmark::DoNotOptimize(optimize_ce(game, w));
}
BENCHMARK(BM_OptimizeCe)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_RegretMatching(benchmark::State& state) {
    const auto game = build_contention_game();
    const std::vector<LearnerSpec> rm(2, LearnerSpec{LearnerKind::regret_matching, 0});
    RunConfig cfg;
    cfg.rounds = static_cast<std::size_t>(state.range(0));
    cfg.record_regrets = false;
    for (auto _ : state) benchmark::DoNotOptimize(run_repeated_game(game, rm, cfg));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RegretMatching)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
