#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "mcp/aifv.hpp"
#include "mcp/geometry.hpp"
#include "mcp/oracle.hpp"
#include "mcp/problem.hpp"
#include "mcp/slice.hpp"
#include "mcp/solver.hpp"

namespace {

using namespace mcp;

StateSpec bench_state(std::mt19937_64& rng, int m) {
    StateSpec s;
    s.reward = rat(static_cast<long>(rng() % 32), 8);
    std::vector<long> w(m);
    long total = 0;
    for (long& x : w) {
        x = static_cast<long>(rng() % 8);
        total += x;
    }
    if (w[0] == 0) {
        w[0] = 1;
        ++total;
    }
    for (long x : w) s.transitions.push_back(rat(x, total));
    return s;
}

ProblemSpec bench_problem(int m, int states_per_type, unsigned seed) {
    std::mt19937_64 rng(seed);
    ProblemSpec p;
    p.state_sets.resize(m);
    for (auto& set : p.state_sets)
        for (int i = 0; i < states_per_type; ++i) set.push_back(bench_state(rng, m));
    return p;
}

// Guarantees a type-0/type-2 envelope crossing inside x2 in [0, 1] on every
// slice, so eval_E1 never rejects.
ProblemSpec slice_problem(int states_per_type, unsigned seed) {
    ProblemSpec p = bench_problem(3, states_per_type, seed);
    p.state_sets[0].push_back({rat(0), {rat(1, 2), rat(0), rat(1, 2)}});
    p.state_sets[2].push_back({rat(0), {rat(1, 2), rat(1, 4), rat(1, 4)}});
    return p;
}

void BM_EnvelopeHeight(benchmark::State& state) {
    const ProblemSpec p = bench_problem(3, static_cast<int>(state.range(0)), 7);
    const PointX x{rat(1, 3), rat(2, 5)};
    for (auto _ : state) benchmark::DoNotOptimize(eval_h(x, p));
}
BENCHMARK(BM_EnvelopeHeight)->Arg(8)->Arg(64)->Arg(512);

void BM_MultiTypedIntersection(benchmark::State& state) {
    const ProblemSpec p = bench_problem(static_cast<int>(state.range(0)), 1, 11);
    std::vector<StateSpec> chain;
    for (const auto& set : p.state_sets) chain.push_back(set[0]);
    for (auto _ : state) benchmark::DoNotOptimize(multi_typed_intersection(chain).y);
}
BENCHMARK(BM_MultiTypedIntersection)->Arg(2)->Arg(3)->Arg(5)->Arg(8);

void BM_SolveIterative(benchmark::State& state) {
    const ProblemSpec p = bench_problem(3, static_cast<int>(state.range(0)), 13);
    for (auto _ : state) benchmark::DoNotOptimize(solve_iterative(p).point.y);
}
BENCHMARK(BM_SolveIterative)->Arg(4)->Arg(16)->Arg(64);

void BM_BruteForce(benchmark::State& state) {
    const ProblemSpec p = bench_problem(3, static_cast<int>(state.range(0)), 13);
    for (auto _ : state) benchmark::DoNotOptimize(brute_force_min(p).best_cost);
}
BENCHMARK(BM_BruteForce)->Arg(4)->Arg(8);

void BM_EnumerateTrees(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_trees(1, 3, n, 2 * n).size());
}
BENCHMARK(BM_EnumerateTrees)->Arg(5)->Arg(6)->Arg(7);

void BM_EvalE1(benchmark::State& state) {
    const ProblemSpec p = slice_problem(static_cast<int>(state.range(0)), 17);
    const PrecisionConfig cfg = PrecisionConfig::from_bits(4);
    const Rat lambda = rat(3, 7);
    for (auto _ : state) benchmark::DoNotOptimize(eval_E1(lambda, p, cfg).y);
}
BENCHMARK(BM_EvalE1)->Arg(8)->Arg(32);

}  // namespace
