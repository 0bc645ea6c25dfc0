#include <doctest.h>

#include "mcp/errors.hpp"
#include "mcp/geometry.hpp"
#include "test_support.hpp"

using namespace mcp;
using namespace mcp::test;

TEST_CASE("eval_f substitutes the hyperplane form") {
    const StateSpec s = mk_state("1", {"1/2", "1/4", "1/4"});
    CHECK(eval_f(0, {rat(0), rat(0)}, s) == rat(1));
    CHECK(eval_f(0, {rat(1), rat(1)}, s) == rat(3, 2));
    CHECK(eval_f(1, {rat(1), rat(1)}, s) == rat(1, 2));
    CHECK(eval_f(2, {rat(1), rat(1)}, s) == rat(1, 2));
    CHECK_THROWS_AS(eval_f(0, {rat(0)}, s), InputError);
}

TEST_CASE("eval_envelope takes the minimum with smallest-index ties") {
    const ProblemSpec p = four_chain_problem();
    const PointX x = {rat(3, 5)};

    const EnvelopeEval g1 = eval_envelope(1, x, p);
    CHECK(g1.value == rat(6, 5));
    CHECK(g1.argmin == 1);

    const EnvelopeEval g0 = eval_envelope(0, x, p);
    CHECK(g0.value == rat(6, 5));

    ProblemSpec single;
    single.state_sets = {{mk_state("2", {"1", "0"})}, {mk_state("1", {"1", "0"})}};
    CHECK(eval_envelope(0, {rat(1, 3)}, single).argmin == 0);

    ProblemSpec dup;
    dup.state_sets = {{mk_state("2", {"1", "0"}), mk_state("2", {"1", "0"})},
                      {mk_state("1", {"1", "0"})}};
    CHECK(eval_envelope(0, {rat(1, 3)}, dup).argmin == 0);
}

TEST_CASE("eval_h is the pointwise minimum over envelopes") {
    const ProblemSpec p = four_chain_problem();
    CHECK(eval_h({rat(3, 5)}, p) == rat(6, 5));
    CHECK(eval_h({rat(0)}, p) == rat(3, 4));
}

TEST_CASE("multi_typed_intersection solves the common point exactly") {
    const ProblemSpec p = four_chain_problem();

    const LiftedPoint ac = multi_typed_intersection(resolve_chain(p, {0, 0}));
    CHECK(ac.x == PointX{rat(2, 3)});
    CHECK(ac.y == rat(4, 3));

    const LiftedPoint bd = multi_typed_intersection(resolve_chain(p, {1, 1}));
    CHECK(bd.x == PointX{rat(3, 5)});
    CHECK(bd.y == rat(6, 5));

    const StateSpec c = mk_state("5/7", {"1", "0", "0"});
    const LiftedPoint forced = multi_typed_intersection({c, c, c});
    CHECK(forced.x == PointX{rat(0), rat(0)});
    CHECK(forced.y == rat(5, 7));
}

TEST_CASE("stationary_distribution solves the balance equations") {
    const ProblemSpec p = four_chain_problem();
    CHECK(stationary_distribution(resolve_chain(p, {0, 0})) ==
          std::vector<Rat>{rat(2, 3), rat(1, 3)});
    CHECK(stationary_distribution(resolve_chain(p, {1, 1})) ==
          std::vector<Rat>{rat(2, 5), rat(3, 5)});

    const StateSpec stay = mk_state("1", {"1", "0"});
    CHECK(stationary_distribution({stay, stay}) == std::vector<Rat>{rat(1), rat(0)});
}

TEST_CASE("chain_cost weights rewards by the stationary distribution") {
    const ProblemSpec p = four_chain_problem();
    CHECK(chain_cost(resolve_chain(p, {0, 0})) == rat(4, 3));
    CHECK(chain_cost(resolve_chain(p, {1, 1})) == rat(6, 5));

    const StateSpec free0 = mk_state("0", {"1/2", "1/2"});
    const StateSpec free1 = mk_state("0", {"1", "0"});
    CHECK(chain_cost({free0, free1}) == rat(0));
}

TEST_CASE("cost identity holds on every fixture chain") {
    const ProblemSpec p = four_chain_problem();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const auto chain = resolve_chain(p, {i, j});
            CHECK(chain_cost(chain) == multi_typed_intersection(chain).y);
        }
}

TEST_CASE("classify_cone follows the sign and tie rules") {
    CHECK(classify_cone({rat(-1), rat(-2)}) == 0);
    CHECK(classify_cone({rat(-1), rat(2)}) == 2);
    CHECK(classify_cone({rat(3), rat(3)}) == 1);
    CHECK(classify_cone({rat(0), rat(0)}) == 0);
    CHECK(classify_cone({rat(0), rat(1, 7)}) == 2);
    CHECK(classify_cone({rat(5)}) == 1);
}

TEST_CASE("solve_linear_system reports singular systems") {
    const auto sol = solve_linear_system({{rat(2), rat(0)}, {rat(0), rat(4)}}, {rat(1), rat(1)});
    REQUIRE(sol.has_value());
    CHECK(*sol == std::vector<Rat>{rat(1, 2), rat(1, 4)});

    CHECK(!solve_linear_system({{rat(1), rat(2)}, {rat(2), rat(4)}}, {rat(1), rat(1)}).has_value());
}
