#include <doctest.h>

#include <vector>

#include "mcp/geometry.hpp"
#include "mcp/problem.hpp"
#include "mcp/slice.hpp"
#include "mcp/solver.hpp"
#include "test_support.hpp"

using namespace mcp;
using namespace mcp::test;

namespace {

/// Upper bound on |d x2 / d x1| of the slice crossing: the crossing always
/// lies on one (type-0, type-2) line pair, and a pair's crossing moves at
/// rate (q1_j - q1_i) / (q2_i + 1 - q2_j), whose denominator is positive.
Rat slice_lipschitz(const ProblemSpec& p) {
    Rat best = 0;
    for (const StateSpec& s0 : p.state_sets[0])
        for (const StateSpec& s2 : p.state_sets[2]) {
            Rat num = s2.transitions[1] - s0.transitions[1];
            if (num < 0) num = -num;
            const Rat ratio = num / (s0.transitions[2] + 1 - s2.transitions[2]);
            if (ratio > best) best = ratio;
        }
    return best;
}

/// Random m=3 problem that keeps a slice crossing inside x2 in [0, 1] at
/// every lambda in [0, 1]: the zero-reward type-0 state pins g0(., 0) = 0
/// while the zero-reward type-2 state keeps g2(., 1) < 0.
ProblemSpec crossing_problem(Rng& rng) {
    ProblemSpec p = random_problem(rng, 3, 4, 4);
    p.state_sets[0].push_back(mk_state("0", {"1/2", "0", "1/2"}));
    p.state_sets[2].push_back(mk_state("0", {"1/2", "1/4", "1/4"}));
    return p;
}

}  // namespace

TEST_CASE("random chains: cost equals the lifted intersection height") {
    Rng rng(41);
    for (int trial = 0; trial < 300; ++trial) {
        const int m = 2 + trial % 3;
        const ProblemSpec p = random_problem(rng, m);
        const std::vector<StateSpec> chain = resolve_chain(p, random_chain(rng, p));
        CHECK(chain_cost(chain) == multi_typed_intersection(chain).y);
    }
}

TEST_CASE("random chains: stationary distribution balances") {
    Rng rng(47);
    for (int trial = 0; trial < 200; ++trial) {
        const int m = 2 + trial % 3;
        const ProblemSpec p = random_problem(rng, m);
        const std::vector<StateSpec> chain = resolve_chain(p, random_chain(rng, p));
        const std::vector<Rat> pi = stationary_distribution(chain);
        REQUIRE(pi.size() == chain.size());
        Rat sum = 0;
        for (const Rat& mass : pi) {
            CHECK(mass >= 0);
            sum += mass;
        }
        CHECK(sum == 1);
        for (int j = 0; j < m; ++j) {
            Rat flow = 0;
            for (int k = 0; k < m; ++k) flow += pi[k] * chain[k].transitions[j];
            CHECK(flow == pi[j]);
        }
        CHECK(pi[0] > 0);
    }
}

TEST_CASE("cone classification is total, scale invariant, and index-deterministic") {
    Rng rng(42);
    for (int trial = 0; trial < 400; ++trial) {
        const int dims = 1 + trial % 3;
        std::vector<Rat> u;
        for (int j = 0; j < dims; ++j)
            u.push_back(rat(static_cast<long>(rng() % 33) - 16, 4));
        const int k = classify_cone(u);
        CHECK(k >= 0);
        CHECK(k <= dims);
        if (k == 0) {
            bool nonzero = false;
            for (const Rat& c : u) {
                CHECK(c <= 0);
                if (c != 0) nonzero = true;
            }
            if (nonzero) {
                std::vector<Rat> neg;
                for (const Rat& c : u) neg.push_back(-c);
                CHECK(classify_cone(neg) >= 1);
            }
        } else {
            CHECK(u[k - 1] > 0);
            for (int j = 0; j < dims; ++j) CHECK(u[k - 1] >= u[j]);
            for (int j = 0; j < k - 1; ++j) CHECK(u[j] < u[k - 1]);
        }
        std::vector<Rat> scaled;
        for (const Rat& c : u) scaled.push_back(c * rat(3, 2));
        CHECK(classify_cone(scaled) == k);
    }
}

TEST_CASE("moving along a cone never increases the matching hyperplane value") {
    Rng rng(43);
    int strict_checked = 0;
    for (int trial = 0; trial < 120; ++trial) {
        const int m = 2 + trial % 3;
        const ProblemSpec p = random_problem(rng, m, 4, 6);
        for (int rep = 0; rep < 3; ++rep) {
            PointX u;
            for (int j = 1; j < m; ++j)
                u.push_back(rat(static_cast<long>(rng() % 65) - 32, 8));
            for (int i = 0; i < m; ++i) {
                std::vector<Rat> w(m - 1);
                if (i == 0) {
                    for (Rat& c : w) c = -rat(static_cast<long>(rng() % 17), 8);
                    CHECK(classify_cone(w) == 0);
                } else {
                    const Rat peak = rat(1 + static_cast<long>(rng() % 16), 8);
                    for (int j = 0; j < m - 1; ++j) {
                        if (j == i - 1)
                            w[j] = peak;
                        else if (j < i - 1)
                            w[j] = peak - rat(1 + static_cast<long>(rng() % 16), 8);
                        else
                            w[j] = peak - rat(static_cast<long>(rng() % 17), 8);
                    }
                    CHECK(classify_cone(w) == i);
                }
                PointX shifted(m - 1);
                for (int j = 0; j < m - 1; ++j) shifted[j] = u[j] + w[j];
                for (const StateSpec& s : p.state_sets[i]) {
                    const Rat before = eval_f(i, u, s);
                    const Rat after = eval_f(i, shifted, s);
                    if (i == 0) {
                        CHECK(after <= before);
                    } else {
                        CHECK(after < before);
                        ++strict_checked;
                    }
                }
                CHECK(eval_envelope(i, shifted, p).value <= eval_envelope(i, u, p).value);
            }
        }
    }
    CHECK(strict_checked >= 500);
}

TEST_CASE("every envelope is active at the optimum") {
    Rng rng(44);
    for (int trial = 0; trial < 50; ++trial) {
        const int m = 2 + trial % 3;
        const ProblemSpec p = random_problem(rng, m);
        const SolveResult res = solve_iterative(p);
        for (int k = 0; k < m; ++k)
            CHECK(eval_envelope(k, res.point.x, p).value == res.point.y);
        CHECK(eval_h(res.point.x, p) == res.point.y);
    }
}

TEST_CASE("restricted envelopes are monotone in x2") {
    Rng rng(45);
    for (int trial = 0; trial < 30; ++trial) {
        const ProblemSpec p = random_problem(rng, 3);
        const Rat lambda = rat(static_cast<long>(rng() % 17), 16);
        Rat prev0, prev2;
        for (int step = 0; step <= 8; ++step) {
            const PointX x{lambda, rat(step, 8)};
            const Rat g0 = eval_envelope(0, x, p).value;
            const Rat g2 = eval_envelope(2, x, p).value;
            if (step > 0) {
                CHECK(g0 >= prev0);
                CHECK(g2 < prev2);
            }
            prev0 = g0;
            prev2 = g2;
        }
    }
}

TEST_CASE("slice crossing is constant when no line depends on x1") {
    const ProblemSpec p = e1_fixture_problem();
    const PrecisionConfig cfg = PrecisionConfig::from_bits(4);
    const SlicePoint base = eval_E1(rat(0), p, cfg);
    CHECK(base.x2 == rat(2, 3));
    CHECK(base.y == rat(4, 3));
    for (long num : {1L, 2L, 3L}) {
        const SlicePoint moved = eval_E1(rat(num, 4), p, cfg);
        CHECK(moved.x2 == base.x2);
        CHECK(moved.y == base.y);
    }
}

TEST_CASE("slice crossing moves at most at the Lipschitz rate") {
    Rng rng(46);
    const PrecisionConfig cfg = PrecisionConfig::from_bits(4);
    for (int trial = 0; trial < 25; ++trial) {
        const ProblemSpec p = crossing_problem(rng);
        const Rat bound = slice_lipschitz(p);
        const Rat lambda = rat(static_cast<long>(rng() % 8), 16);
        const SlicePoint at = eval_E1(lambda, p, cfg);
        CHECK(at.x2 >= 0);
        CHECK(at.x2 <= 1);
        CHECK(eval_envelope(0, {lambda, at.x2}, p).value == at.y);
        CHECK(eval_envelope(2, {lambda, at.x2}, p).value == at.y);
        for (int t : {4, 8, 12, 16}) {
            const Rat delta = pow2(-t);
            const SlicePoint moved = eval_E1(lambda + delta, p, cfg);
            Rat diff = moved.x2 - at.x2;
            if (diff < 0) diff = -diff;
            CHECK(diff <= bound * delta);
        }
    }
}
