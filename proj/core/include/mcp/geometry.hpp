#pragma once

#include <optional>
#include <vector>

#include "mcp/problem.hpp"
#include "mcp/rational.hpp"

namespace mcp {

/// f_k(x, s) = reward(s) + sum_{j>=1} q_j(s) x_j − (x_k if k > 0 else 0).
/// Type 0 has no −x_k term. Throws InputError on dimension mismatch.
Rat eval_f(int k, const PointX& x, const StateSpec& s);

/// g_k(x) = min over state_sets[k] of eval_f, with the smallest-index argmin.
EnvelopeEval eval_envelope(int k, const PointX& x, const ProblemSpec& problem);

/// h(x) = min over all types k of g_k(x).
Rat eval_h(const PointX& x, const ProblemSpec& problem);

/// Cone label of u in R^{m-1}: 0 iff u <= 0 componentwise, otherwise the
/// smallest k >= 1 whose coordinate u_k is positive and maximal.
int classify_cone(const std::vector<Rat>& u);

/// The unique point (x, y) with f_k(x, chain[k]) = y for every k. The system
/// is provably nonsingular for permissible chains (q_0 > 0 everywhere), so a
/// singular system raises InternalError.
LiftedPoint multi_typed_intersection(const std::vector<StateSpec>& chain);

/// Exact stationary distribution pi of the chain's transition matrix:
/// pi Q = pi, sum pi = 1, pi >= 0. Types unreachable from type 0 are
/// transient and receive pi_k = 0. Raises InternalError when the system
/// is not uniquely solvable (contradicts the unichain property).
std::vector<Rat> stationary_distribution(const std::vector<StateSpec>& chain);

/// cost(S) = sum_k reward(chain[k]) * pi_k.
Rat chain_cost(const std::vector<StateSpec>& chain);

/// Exact Gauss-Jordan solve of the square system A x = b.
/// Empty result when A is singular.
std::optional<std::vector<Rat>> solve_linear_system(std::vector<std::vector<Rat>> a,
                                                    std::vector<Rat> b);

}  // namespace mcp
