#include <benchmark/benchmark.h>

#include <cmath>

#include "tdho/ermakov.hpp"
#include "tdho/oracle.hpp"
#include "tdho/specfun.hpp"
#include "tdho/transitions.hpp"

namespace {

tdho::ErmakovSolution example1(std::size_t n_out) {
    const auto p = tdho::FrequencyProfile::tanh_step(10.0, 100.0, 5.0);
    tdho::ErmakovOptions o;
    o.reference_time = -2.0;
    o.reference_frequency = p.omega(-2.0);
    o.output_times = tdho::uniform_grid(-2.0, 2.0, n_out);
    return tdho::solve(p, -2.0, 2.0, o);
}

void BM_SolveExample1(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(example1(1201));
}
BENCHMARK(BM_SolveExample1)->Unit(benchmark::kMillisecond);

void BM_SolveExample2(benchmark::State& state) {
    const auto p = tdho::FrequencyProfile::sech_bump(2.0, std::sqrt(102.0), 7.0);
    for (auto _ : state) {
        tdho::ErmakovOptions o;
        o.reference_time = -3.0;
        o.reference_frequency = p.omega(-3.0);
        o.output_times = tdho::uniform_grid(-3.0, 3.0, 1201);
        benchmark::DoNotOptimize(tdho::solve(p, -3.0, 3.0, o));
    }
}
BENCHMARK(BM_SolveExample2)->Unit(benchmark::kMillisecond);

void BM_ProbabilityTable(benchmark::State& state) {
    const auto sol = example1(1201);
    const int N = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(tdho::probability_table(sol, tdho::Representation::Initial, N, sol.grid()));
}
BENCHMARK(BM_ProbabilityTable)->Arg(0)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_LegendreRatioForm(benchmark::State& state) {
    const int M = static_cast<int>(state.range(0));
    const double r = 1.2;
    for (auto _ : state) benchmark::DoNotOptimize(tdho::legendre_ratio_form(3, M, std::cosh(r), std::sinh(r)));
}
BENCHMARK(BM_LegendreRatioForm)->Arg(41)->Arg(401);

void BM_EvolveFock(benchmark::State& state) {
    const auto p = tdho::FrequencyProfile::sech_bump(2.0, std::sqrt(102.0), 7.0);
    const auto times = tdho::uniform_grid(-3.0, 3.0, 20);
    tdho::FockOptions o;
    o.dimension = static_cast<int>(state.range(0));
    o.reference_time = -3.0;
    o.reference_frequency = p.omega(-3.0);
    for (auto _ : state) benchmark::DoNotOptimize(tdho::evolve_fock(p, 1, times, o));
}
BENCHMARK(BM_EvolveFock)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
