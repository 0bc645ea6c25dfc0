#pragma once

#include <random>
#include <string>
#include <vector>

#include "mcp/aifv.hpp"
#include "mcp/problem.hpp"
#include "mcp/rational.hpp"
#include "mcp/slice.hpp"

namespace mcp::test {

using Rng = std::mt19937_64;

/// State from fraction strings; q entries are parse_rat inputs.
StateSpec mk_state(const std::string& reward, const std::vector<std::string>& q);

/// m=2 fixture with two states per type; optimum is chain (1,1) at
/// x=(3/5), y=6/5 and the four chain costs are 4/3, 5/4, 9/7, 6/5.
ProblemSpec four_chain_problem();

/// Singleton m=3 problem whose three hyperplanes meet at x=(3/5,4/5), y=6/5.
ProblemSpec snap_fixture_problem();

/// m=3 problem whose x_1=0 slice has type-0 lines {1 + x2/2, 5/4 + x2/4}
/// and type-2 lines {2 - x2, 9/5 - x2/2}, crossing at x2=2/3, y=4/3.
ProblemSpec e1_fixture_problem();

/// AIFV-3 code over {a,b,c,d} with c->000 (degree 0) and b->1 (degree 2)
/// in T_0, b->010 in T_1, and a->epsilon (degree 1) in T_2; encodes
/// "c b a b" to "0001010".
AifvCode figure_code();

/// 2-symbol code whose T_1 is a symbol-swapped copy of T_0 (both with a
/// degree-1 root master). Round-trips fail first at [u,u].
AifvCode corrupt_code();

/// n=3, b=2, p=(1/2,1/4,1/4).
SourceDistribution small_source();

/// n=7, b=3, p_1=2/8 and 1/8 elsewhere.
SourceDistribution example_source7();

/// Deterministic dyadic shapes: 0 near-uniform (last symbol absorbs),
/// 1 half-dominant, 2 two-heavy.
SourceDistribution structured_source(int n, unsigned b, int shape);

/// Random composition of 2^b into n positive parts via distinct cut points.
SourceDistribution random_cut_source(unsigned seed, int n, unsigned b);

/// Random valid problem: 1..max_states states per type, transitions a
/// composition of 2^bb (bb <= b) with q_0 >= 1 part, rewards in [0,4].
ProblemSpec random_problem(Rng& rng, int m, int max_states = 5, unsigned b = 8);

ChainSelection random_chain(Rng& rng, const ProblemSpec& problem);

/// Dyadic point in [0,1]^{m-1}.
PointX random_point(Rng& rng, int m, unsigned b = 8);

/// Uniform grid over [0,1]^{m-1} with steps+1 points per axis.
std::vector<PointX> grid_points(int m, int steps);

/// Independent generate-and-filter enumerator: every node layout of at most
/// max_nodes nodes is generated (all kind/degree/symbol choices), then kept
/// iff validate_tree accepts it. Canonical comparison key for cross-checks.
std::vector<AifvTree> naive_enumerate_trees(int k, int m, int n, int max_nodes);

/// Crossing of the two envelopes restricted to the x_1=lambda slice, found
/// by intersecting every (type-0, type-2) line pair and keeping the unique
/// candidate where both lines are envelope-active. Aborts if the accepted
/// candidates disagree.
SlicePoint pairwise_E1_oracle(const Rat& lambda, const ProblemSpec& problem);

/// Canonical state order used by aifv_problem: lexicographic on
/// (reward, q_0..q_{m-1}).
bool state_less(const StateSpec& a, const StateSpec& b);

}  // namespace mcp::test
