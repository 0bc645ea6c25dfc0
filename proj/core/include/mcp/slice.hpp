#pragma once

#include <vector>

#include "mcp/problem.hpp"
#include "mcp/rational.hpp"
#include "mcp/solver.hpp"

namespace mcp {

/// Bit-precision model: inputs are integer multiples of 2^-b, the outer
/// search stops at bracket width epsilon0 = 2^-b_prime.
struct PrecisionConfig {
    unsigned b = 1;
    unsigned b_prime = 32;
    Rat epsilon0;

    /// Default working precision b' = 14 b + 18.
    static PrecisionConfig from_bits(unsigned b);

    /// Explicit override of b' (must be >= b).
    static PrecisionConfig with_b_prime(unsigned b, unsigned b_prime);
};

/// The unique crossing of the type-0 and type-2 envelopes on the slice
/// x_1 = lambda: g_0((lambda, x2)) = g_2((lambda, x2)) = y exactly.
struct SlicePoint {
    Rat lambda;
    Rat x2;
    Rat y;
};

/// One outer-search iteration: the bracket before the update and the
/// envelope values g_0, g_1 at the probed midpoint.
struct SliceIteration {
    Rat l;
    Rat r;
    Rat e0;
    Rat e1;
};

/// Extra reporting from solve_slice_search: the approximate abscissa the
/// bisection stopped at, the per-iteration trace, and whether the search hit
/// an exact envelope tie before exhausting its budget.
struct SliceSearchReport {
    Rat x1_prime;
    std::vector<SliceIteration> iterations;
    bool early_exact = false;
};

/// Evaluates E_1(lambda) for an m=3 problem: on the slice, type-0 restricted
/// lines have slope q_2 >= 0 and type-2 lines slope q_2 - 1 < 0, so
/// g_0 - g_2 is strictly increasing and crosses zero at most once. The
/// crossing is located by halving on dyadic midpoints with early exact
/// verification: each step intersects the four candidate argmin lines from
/// the bracket ends and accepts a candidate x2 iff g_0 = g_2 there exactly.
/// Requires g_0 - g_2 <= 0 at x2 = lo and >= 0 at x2 = hi; otherwise throws
/// InputError ("no slice crossing in interval").
SlicePoint eval_E1(const Rat& lambda, const ProblemSpec& problem, const PrecisionConfig& cfg,
                   const Rat& lo = Rat(0), const Rat& hi = Rat(1));

/// Outer bisection on lambda for m=3 problems with the boundary-sign
/// property: starting from [lo, hi] = [0, 1], probe mid = (l+r)/2, compare
/// e_0 = g_0(E_1(mid)) against e_1 = g_1(E_1(mid)), move l up when e_0 < e_1
/// and r down otherwise, stop when r - l = epsilon0, and take x_1' = l. The
/// argmin states at E_1(x_1') feed snap_to_exact, whose verified point is
/// returned (it equals solve_iterative's point). An exact e_0 = e_1 tie
/// short-circuits the loop. Violated endpoint signs throw InputError; a
/// failed snap certificate throws SnapRejected.
SolveResult solve_slice_search(const ProblemSpec& problem, const PrecisionConfig& cfg,
                               SliceSearchReport* report = nullptr, const Rat& lo = Rat(0),
                               const Rat& hi = Rat(1));

/// Solves the exact 3x3 system for the common point of the three states'
/// hyperplanes and verifies g_k(x) = f_k(x, t_k) for every k, which
/// certifies the point as the polytope's highest. Verification failure
/// throws SnapRejected with diagnostics; a singular system throws
/// InternalError.
LiftedPoint snap_to_exact(const StateSpec& t0, const StateSpec& t1, const StateSpec& t2,
                          const ProblemSpec& problem);

struct BoundaryViolation {
    int k;       // type index 1..m-1
    int side;    // 0: x_k = 0 checks g_0 - g_k <= 0; 1: x_k = 1 checks g_k - g_0 <= 0
    PointX x;
    Rat difference;
};

struct BoundaryReport {
    bool skipped = false;
    std::string note;
    int samples = 0;
    std::vector<BoundaryViolation> violations;

    bool ok() const { return !skipped && violations.empty(); }
};

/// Samples the boundary-sign property on the edges of [0,1]^2 for an m=3
/// problem: at x_k = 0, g_0 - g_k <= 0; at x_k = 1, g_k - g_0 <= 0, with the
/// free coordinate on a uniform grid of samples_per_edge points. The
/// property is only guaranteed for AIFV-derived problems with n >= 7
/// symbols; when n_symbols is given and smaller, the check is skipped with
/// a warning note. Report-only: violations are listed, never thrown.
BoundaryReport boundary_sign_check(const ProblemSpec& problem, int samples_per_edge,
                                   int n_symbols = -1);

}  // namespace mcp
