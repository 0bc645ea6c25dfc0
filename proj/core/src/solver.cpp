#include "mcp/solver.hpp"

#include <string>

#include "mcp/errors.hpp"
#include "mcp/geometry.hpp"

namespace mcp {

namespace {

ChainSelection envelope_argmin_chain(const ProblemSpec& problem, const PointX& x) {
    ChainSelection chain(problem.num_types());
    for (int k = 0; k < problem.num_types(); ++k) chain[k] = eval_envelope(k, x, problem).argmin;
    return chain;
}

bool componentwise_leq(const PointX& a, const PointX& b) {
    for (std::size_t j = 0; j < a.size(); ++j)
        if (a[j] > b[j]) return false;
    return true;
}

}  // namespace

SolveResult solve_iterative(const ProblemSpec& problem, const ChainSelection& start) {
    validate_problem(problem);
    validate_selection(problem, start);

    const unsigned long long cap = problem.chain_count(1ULL << 62) + 1;

    IterationTrace trace;
    ChainSelection chain = start;
    LiftedPoint point = multi_typed_intersection(resolve_chain(problem, chain));
    trace.steps.push_back({chain, point.x, point.y});

    for (unsigned long long iter = 0;; ++iter) {
        if (iter >= cap)
            throw InternalError("solve_iterative: iteration cap " + std::to_string(cap) +
                                " exceeded (the descent must revisit a chain within the cap)");
        ChainSelection next_chain = envelope_argmin_chain(problem, point.x);
        LiftedPoint next = multi_typed_intersection(resolve_chain(problem, next_chain));

        // Descent facts: costs never increase, and a cost plateau moves the
        // point componentwise downward.
        if (next.y > point.y)
            throw InternalError("solve_iterative: cost increased from " + to_string(point.y) +
                                " to " + to_string(next.y));
        if (next.y == point.y && !componentwise_leq(next.x, point.x))
            throw InternalError("solve_iterative: cost plateau without componentwise descent");

        trace.steps.push_back({next_chain, next.x, next.y});
        const bool fixed_point = next.x == point.x && next.y == point.y;
        chain = std::move(next_chain);
        point = std::move(next);
        if (fixed_point) break;
    }

    // At the fixed point every envelope passes through the point, so it lies
    // on the polytope surface: h(p) = y certifies minimum cost.
    if (eval_h(point.x, problem) != point.y)
        throw InternalError("solve_iterative: fixed point not on the polytope surface, h(p) = " +
                            to_string(eval_h(point.x, problem)) + " vs y = " + to_string(point.y));

    return {std::move(chain), std::move(point), std::move(trace)};
}

SolveResult solve_iterative(const ProblemSpec& problem) {
    validate_problem(problem);
    return solve_iterative(problem, ChainSelection(problem.num_types(), 0));
}

SolveResult solve_and_certify(const ProblemSpec& problem) {
    validate_problem(problem);

    SolveResult primary = solve_iterative(problem, ChainSelection(problem.num_types(), 0));

    ChainSelection other(problem.num_types());
    for (int k = 0; k < problem.num_types(); ++k) other[k] = problem.state_sets[k].size() - 1;
    SolveResult secondary = solve_iterative(problem, other);

    if (!(primary.point == secondary.point))
        throw InternalError("solve_and_certify: starts disagree, (" + to_string(primary.point.x) +
                            "; " + to_string(primary.point.y) + ") vs (" + to_string(secondary.point.x) +
                            "; " + to_string(secondary.point.y) + ") (the optimum is unique, "
                            "so every start must reach the same point)");
    return primary;
}

}  // namespace mcp
