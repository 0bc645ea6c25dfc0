#pragma once

#include <vector>

#include "mcp/problem.hpp"

namespace mcp {

/// One recorded iterate: the chain whose multi-typed intersection is (p, c).
struct TraceStep {
    ChainSelection chain;
    PointX p;
    Rat c;
};

/// Full iterate history. Invariants (asserted by the solver, re-checked by
/// tests): the c sequence is nonincreasing; equal consecutive c implies
/// componentwise p_i <= p_{i-1}; the final two steps have equal p.
struct IterationTrace {
    std::vector<TraceStep> steps;
};

struct SolveResult {
    ChainSelection chain;
    LiftedPoint point;
    IterationTrace trace;
};

/// Fastest-descent iteration: repeatedly replace the current point p with the
/// projection of multi_typed_intersection(S(p)), where S(p) picks each type's
/// envelope argmin at p, until p repeats exactly. The final chain is
/// minimum-cost and its intersection is the highest point of the polytope.
/// Raises InternalError if a descent fact fails at runtime: cost
/// monotonicity, plateau monotonicity, the iteration cap prod|S_k| + 1, or
/// h(p) = y at the fixed point.
SolveResult solve_iterative(const ProblemSpec& problem, const ChainSelection& start);

/// solve_iterative from the default start: index 0 for every type.
SolveResult solve_iterative(const ProblemSpec& problem);

/// Runs solve_iterative from two distinct starts (all-zero indices and
/// all-last indices) and verifies both reach the identical LiftedPoint; the
/// optimum's intersection point is unique, so a mismatch raises
/// InternalError.
SolveResult solve_and_certify(const ProblemSpec& problem);

}  // namespace mcp
