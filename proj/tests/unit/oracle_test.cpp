#include <doctest.h>

#include "mcp/errors.hpp"
#include "mcp/geometry.hpp"
#include "mcp/oracle.hpp"
#include "mcp/solver.hpp"
#include "test_support.hpp"

using namespace mcp;
using namespace mcp::test;

TEST_CASE("brute_force_min solves the four-chain fixture") {
    const ProblemSpec p = four_chain_problem();
    const OracleReport rep = brute_force_min(p);
    CHECK(rep.best_chain == ChainSelection{1, 1});
    CHECK(rep.best_cost == rat(6, 5));
    CHECK(rep.all_costs ==
          std::vector<Rat>{rat(4, 3), rat(5, 4), rat(9, 7), rat(6, 5)});
}

TEST_CASE("brute_force_min on a single chain returns it") {
    ProblemSpec p;
    p.state_sets = {{mk_state("1", {"1/2", "1/2"})}, {mk_state("2", {"1", "0"})}};
    const OracleReport rep = brute_force_min(p);
    CHECK(rep.best_chain == ChainSelection{0, 0});
    CHECK(rep.best_cost == rat(4, 3));
    CHECK(rep.all_costs.size() == 1);
}

TEST_CASE("brute_force_min breaks ties lexicographically") {
    ProblemSpec p = four_chain_problem();
    p.state_sets[0].push_back(p.state_sets[0][1]);  // duplicate of B at index 2
    const OracleReport rep = brute_force_min(p);
    CHECK(rep.best_chain == ChainSelection{1, 1});
}

TEST_CASE("brute_force_min refuses oversized products") {
    const ProblemSpec p = four_chain_problem();
    CHECK_THROWS_AS(brute_force_min(p, 3), BudgetError);
}

TEST_CASE("oracle costs match the geometry route chain by chain") {
    const ProblemSpec p = four_chain_problem();
    const OracleReport rep = brute_force_min(p);
    std::size_t idx = 0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const auto chain = resolve_chain(p, {i, j});
            CHECK(rep.all_costs[idx] == chain_cost(chain));
            CHECK(rep.all_costs[idx] == multi_typed_intersection(chain).y);
            ++idx;
        }
}

TEST_CASE("sample_height reaches the optimum when the grid hits it") {
    const ProblemSpec p = four_chain_problem();
    std::vector<PointX> grid;
    for (const PointX& x : grid_points(2, 5)) grid.push_back(x);
    std::vector<HeightSample> samples;
    const auto best = sample_height(p, grid, &samples);
    REQUIRE(best.has_value());
    CHECK(*best == rat(6, 5));
    CHECK(samples.size() == grid.size());
    for (const HeightSample& s : samples) CHECK(s.h == eval_h(s.x, p));
}

TEST_CASE("sample_height on an empty grid is empty") {
    CHECK(!sample_height(four_chain_problem(), {}).has_value());
}

TEST_CASE("sample_height never exceeds the solver height") {
    Rng rng(99);
    for (int t = 0; t < 25; ++t) {
        const int m = 2 + static_cast<int>(rng() % 2);
        const ProblemSpec p = random_problem(rng, m, 4, 4);
        std::vector<PointX> grid;
        for (int i = 0; i < 15; ++i) grid.push_back(random_point(rng, m, 6));
        const auto bound = sample_height(p, grid);
        REQUIRE(bound.has_value());
        CHECK(*bound <= solve_iterative(p).point.y);
    }
}

TEST_CASE("exhaustive_roundtrip passes the figure code") {
    const RoundtripReport rep = exhaustive_roundtrip(figure_code(), 4);
    CHECK(rep.ok);
    CHECK(rep.counterexample.empty());
    CHECK(rep.sequences_checked == 341);
}

TEST_CASE("exhaustive_roundtrip at length zero is vacuous") {
    const RoundtripReport rep = exhaustive_roundtrip(figure_code(), 0);
    CHECK(rep.ok);
    CHECK(rep.sequences_checked == 1);
}

TEST_CASE("exhaustive_roundtrip reports the corrupt fixture's counterexample") {
    const RoundtripReport rep = exhaustive_roundtrip(corrupt_code(), 3);
    CHECK(!rep.ok);
    CHECK(rep.counterexample == std::vector<int>{0, 0});
    CHECK(!rep.detail.empty());
    CHECK(rep.sequences_checked == 4);
}

TEST_CASE("exhaustive_roundtrip refuses oversized sequence spaces") {
    CHECK_THROWS_AS(exhaustive_roundtrip(figure_code(), 6, 100), BudgetError);
}
