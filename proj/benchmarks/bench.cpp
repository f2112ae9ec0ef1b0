#include "derand/base_simulators.hpp"
#include "derand/snap.hpp"
#include "derand/sza.hpp"
#include "derand/targeted_prg.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace derand;

static void BM_SnapMatrix(benchmark::State& state) {
    std::mt19937_64 rng(1);
    const auto delta = static_cast<unsigned>(state.range(0));
    const SubstochasticMatrix m = transition_matrix(random_fail_automaton(4, 2 * delta, rng));
    std::uint64_t y = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(snap_matrix(m, y++ & ((std::uint64_t{1} << delta) - 1), delta));
}
BENCHMARK(BM_SnapMatrix)->Arg(4)->Arg(8);

static void BM_PerfectEvaluate(benchmark::State& state) {
    std::mt19937_64 rng(2);
    const SimulatorHandle sim = perfect_simulator(4, 2, 4, 8);
    const auto bound = sim->bind(random_automaton(4, 2, rng));
    std::uint64_t x = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(bound->evaluate(1, x++ & 255));
}
BENCHMARK(BM_PerfectEvaluate);

static void BM_NisanGenerate(benchmark::State& state) {
    const NisanGenerator gen(2, std::uint64_t{1} << state.range(0), 4);
    std::uint64_t x = 0;
    const std::uint64_t mask = (std::uint64_t{1} << gen.seed_bits()) - 1;
    for (auto _ : state)
        benchmark::DoNotOptimize(gen.generate((x += 0x9e3779b97f4a7c15ULL) & mask));
}
BENCHMARK(BM_NisanGenerate)->Arg(2)->Arg(4)->Arg(6);

static void BM_SZA(benchmark::State& state) {
    const auto mode = state.range(0) == 0 ? SZAMode::memo : SZAMode::on_demand;
    const SZAParams p = sza_params(2, Rational(1, 2), 1, 2, 8);
    const SimulatorHandle base = perfect_simulator(p.w, p.d, p.m0, p.s, true);
    std::mt19937_64 rng(3);
    const FailAutomaton q0 = embed(fail_lift(random_automaton(2, 1, rng)), p.d);
    std::uint64_t seed = 0;
    const std::uint64_t mask = (std::uint64_t{1} << p.seed_bits()) - 1;
    for (auto _ : state)
        benchmark::DoNotOptimize(sza_simulate(p, *base, q0, 1, seed++ & mask, mode, state.range(1) != 0).state);
}
BENCHMARK(BM_SZA)->Args({0, 0})->Args({1, 0})->Args({1, 1});

static void BM_CondProbPushforward(benchmark::State& state) {
    const auto prg = cond_prob_prg(perfect_simulator(6, 1, 3, 6), 2, 1, 3);
    std::mt19937_64 rng(4);
    const Automaton a = random_automaton(2, 1, rng);
    for (auto _ : state)
        benchmark::DoNotOptimize(pushforward(*prg, a, 1));
}
BENCHMARK(BM_CondProbPushforward);
BENCHMARK_MAIN();
