#include <doctest.h>

#include "mcp/errors.hpp"
#include "mcp/geometry.hpp"
#include "mcp/solver.hpp"
#include "test_support.hpp"

using namespace mcp;
using namespace mcp::test;

TEST_CASE("the four-chain fixture converges to (B,D) from every start") {
    const ProblemSpec p = four_chain_problem();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            CAPTURE(i);
            CAPTURE(j);
            const SolveResult res = solve_iterative(p, {i, j});
            CHECK(res.chain == ChainSelection{1, 1});
            CHECK(res.point.x == PointX{rat(3, 5)});
            CHECK(res.point.y == rat(6, 5));
        }
}

TEST_CASE("default start is index zero per type") {
    const ProblemSpec p = four_chain_problem();
    const SolveResult a = solve_iterative(p);
    const SolveResult b = solve_iterative(p, {0, 0});
    CHECK(a.chain == b.chain);
    CHECK(a.point == b.point);
    CHECK(a.trace.steps.size() == b.trace.steps.size());
}

TEST_CASE("single-chain problems finish within two iterations") {
    ProblemSpec p;
    p.state_sets = {{mk_state("1", {"1/2", "1/2"})}, {mk_state("2", {"1", "0"})}};
    const SolveResult res = solve_iterative(p);
    CHECK(res.chain == ChainSelection{0, 0});
    CHECK(res.trace.steps.size() <= 2);
    CHECK(res.point.y == rat(4, 3));
}

TEST_CASE("an optimal start yields a constant-p trace of length at most two") {
    const ProblemSpec p = four_chain_problem();
    const SolveResult res = solve_iterative(p, {1, 1});
    CHECK(res.trace.steps.size() <= 2);
    for (const TraceStep& step : res.trace.steps) CHECK(step.p == PointX{rat(3, 5)});
}

TEST_CASE("solve result satisfies its published invariants") {
    const ProblemSpec p = four_chain_problem();
    const SolveResult res = solve_iterative(p);
    CHECK(res.point == multi_typed_intersection(resolve_chain(p, res.chain)));
    CHECK(eval_h(res.point.x, p) == res.point.y);
    for (int k = 0; k < p.num_types(); ++k)
        CHECK(eval_envelope(k, res.point.x, p).value == res.point.y);
}

TEST_CASE("trace invariants hold on random problems") {
    Rng rng(7001);
    for (int t = 0; t < 60; ++t) {
        const int m = 2 + static_cast<int>(rng() % 3);
        const ProblemSpec p = random_problem(rng, m);
        const SolveResult res = solve_iterative(p, random_chain(rng, p));
        const auto& steps = res.trace.steps;
        REQUIRE(steps.size() >= 2);
        unsigned long long cap = 1;
        for (const auto& set : p.state_sets) cap *= set.size();
        CHECK(steps.size() <= cap + 1);
        for (std::size_t i = 1; i < steps.size(); ++i) {
            CHECK(steps[i].c <= steps[i - 1].c);
            if (steps[i].c == steps[i - 1].c)
                for (std::size_t j = 0; j < steps[i].p.size(); ++j)
                    CHECK(steps[i].p[j] <= steps[i - 1].p[j]);
        }
        CHECK(steps[steps.size() - 1].p == steps[steps.size() - 2].p);
        CHECK(eval_h(res.point.x, p) == res.point.y);
    }
}

TEST_CASE("solve_and_certify agrees with the single-start solver") {
    const ProblemSpec p = four_chain_problem();
    const SolveResult res = solve_and_certify(p);
    CHECK(res.point.x == PointX{rat(3, 5)});
    CHECK(res.point.y == rat(6, 5));

    ProblemSpec single;
    single.state_sets = {{mk_state("1", {"1/2", "1/2"})}, {mk_state("2", {"1", "0"})}};
    CHECK(solve_and_certify(single).point.y == rat(4, 3));
}

TEST_CASE("invalid starts are rejected") {
    const ProblemSpec p = four_chain_problem();
    CHECK_THROWS_AS(solve_iterative(p, {5, 0}), InputError);
    CHECK_THROWS_AS(solve_iterative(p, {0}), InputError);
}
