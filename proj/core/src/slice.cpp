#include "mcp/slice.hpp"

#include <string>

#include "mcp/errors.hpp"
#include "mcp/geometry.hpp"

namespace mcp {

PrecisionConfig PrecisionConfig::from_bits(unsigned b) {
    return with_b_prime(b, 14 * b + 18);
}

PrecisionConfig PrecisionConfig::with_b_prime(unsigned b, unsigned b_prime) {
    if (b < 1) throw InputError("PrecisionConfig: b must be >= 1");
    if (b_prime < b) throw InputError("PrecisionConfig: b_prime must be >= b");
    PrecisionConfig cfg;
    cfg.b = b;
    cfg.b_prime = b_prime;
    cfg.epsilon0 = pow2(-static_cast<long>(b_prime));
    return cfg;
}

namespace {

std::size_t bit_size(const Rat& q) {
    return mpz_sizeinbase(q.get_num().get_mpz_t(), 2) + mpz_sizeinbase(q.get_den().get_mpz_t(), 2);
}

// Restricted line of a state on the slice x_1 = lambda, as value(x2) =
// intercept + slope * x2. Type 0 keeps slope q_2; type 2 gets q_2 - 1.
struct SliceLine {
    Rat intercept;
    Rat slope;
};

SliceLine restricted_line(int k, const Rat& lambda, const StateSpec& s) {
    SliceLine line{s.reward + s.transitions[1] * lambda, s.transitions[2]};
    if (k == 2) line.slope -= 1;
    return line;
}

void require_m3(const ProblemSpec& problem, const char* who) {
    validate_problem(problem);
    if (problem.num_types() != 3)
        throw InputError(std::string(who) + ": requires m = 3, got m = " +
                         std::to_string(problem.num_types()));
}

}  // namespace

SlicePoint eval_E1(const Rat& lambda, const ProblemSpec& problem,
                   [[maybe_unused]] const PrecisionConfig& cfg, const Rat& lo, const Rat& hi) {
    require_m3(problem, "eval_E1");
    if (lo > hi) throw InputError("eval_E1: empty interval");

    const auto envelope = [&](int k, const Rat& x2) {
        return eval_envelope(k, PointX{lambda, x2}, problem);
    };

    EnvelopeEval g0_lo = envelope(0, lo);
    EnvelopeEval g2_lo = envelope(2, lo);
    if (g0_lo.value == g2_lo.value) return {lambda, lo, g0_lo.value};
    EnvelopeEval g0_hi = envelope(0, hi);
    EnvelopeEval g2_hi = envelope(2, hi);
    if (g0_hi.value == g2_hi.value) return {lambda, hi, g0_hi.value};
    if (g0_lo.value > g2_lo.value || g0_hi.value < g2_hi.value)
        throw InputError("eval_E1: no slice crossing in interval [" + to_string(lo) + ", " +
                         to_string(hi) + "] at lambda = " + to_string(lambda));

    // The difference g_0 - g_2 is strictly increasing in x2, so halving keeps
    // a sign-changing bracket. Each step first tries the four candidate
    // crossings of the bracket ends' argmin lines, accepting one only on an
    // exact g_0 = g_2 certificate; once the bracket is free of envelope
    // breakpoints, a candidate is exact and the loop stops. The cap is a
    // safety net sized from the coefficient bit lengths.
    std::size_t coeff_bits = bit_size(lambda) + bit_size(hi - lo);
    for (int k : {0, 2})
        for (const StateSpec& s : problem.state_sets[k]) {
            const std::size_t b =
                bit_size(s.reward) + bit_size(s.transitions[1]) + bit_size(s.transitions[2]);
            coeff_bits = std::max(coeff_bits, b + bit_size(lambda) + bit_size(hi - lo));
        }
    const std::size_t cap = 64 + 24 * coeff_bits;

    Rat a = lo, b = hi;
    int arg0_a = g0_lo.argmin, arg2_a = g2_lo.argmin;
    int arg0_b = g0_hi.argmin, arg2_b = g2_hi.argmin;
    for (std::size_t iter = 0; iter < cap; ++iter) {
        for (int s0 : {arg0_a, arg0_b})
            for (int s2 : {arg2_a, arg2_b}) {
                const SliceLine line0 = restricted_line(0, lambda, problem.state_sets[0][s0]);
                const SliceLine line2 = restricted_line(2, lambda, problem.state_sets[2][s2]);
                // slope0 >= 0 > slope2, so the lines always cross once.
                const Rat x2c = (line0.intercept - line2.intercept) / (line2.slope - line0.slope);
                if (x2c < a || x2c > b) continue;
                const EnvelopeEval e0 = envelope(0, x2c);
                const EnvelopeEval e2 = envelope(2, x2c);
                if (e0.value == e2.value) return {lambda, x2c, e0.value};
            }
        const Rat mid = (a + b) / 2;
        const EnvelopeEval e0 = envelope(0, mid);
        const EnvelopeEval e2 = envelope(2, mid);
        if (e0.value == e2.value) return {lambda, mid, e0.value};
        if (e0.value < e2.value) {
            a = mid;
            arg0_a = e0.argmin;
            arg2_a = e2.argmin;
        } else {
            b = mid;
            arg0_b = e0.argmin;
            arg2_b = e2.argmin;
        }
    }
    throw InternalError("eval_E1: exact verification did not converge within " +
                        std::to_string(cap) + " halvings");
}

LiftedPoint snap_to_exact(const StateSpec& t0, const StateSpec& t1, const StateSpec& t2,
                          const ProblemSpec& problem) {
    require_m3(problem, "snap_to_exact");
    const std::vector<StateSpec> chain{t0, t1, t2};
    const LiftedPoint point = multi_typed_intersection(chain);
    for (int k = 0; k < 3; ++k) {
        const Rat fk = eval_f(k, point.x, chain[k]);
        const Rat gk = eval_envelope(k, point.x, problem).value;
        if (fk != gk)
            throw SnapRejected("snap_to_exact: type-" + std::to_string(k) +
                               " hyperplane is not envelope-minimal at the snapped point (f_" +
                               std::to_string(k) + " = " + to_string(fk) + ", g_" +
                               std::to_string(k) + " = " + to_string(gk) + ", x = [" +
                               to_string(point.x) + "])");
    }
    return point;
}

SolveResult solve_slice_search(const ProblemSpec& problem, const PrecisionConfig& cfg,
                               SliceSearchReport* report, const Rat& lo, const Rat& hi) {
    require_m3(problem, "solve_slice_search");
    if (lo >= hi) throw InputError("solve_slice_search: empty interval");

    SliceSearchReport local;
    SliceSearchReport& rep = report ? *report : local;
    rep.iterations.clear();
    rep.early_exact = false;

    const auto probe = [&](const Rat& lambda, Rat& e0, Rat& e1) -> SlicePoint {
        const SlicePoint p = eval_E1(lambda, problem, cfg, lo, hi);
        e0 = p.y;  // on the curve, g_0 = g_2 = y
        e1 = eval_envelope(1, PointX{p.lambda, p.x2}, problem).value;
        return p;
    };

    Rat l = lo, r = hi;
    Rat e0, e1;
    bool found_exact = false;
    Rat x1_exact;

    probe(l, e0, e1);
    if (e0 == e1) {
        found_exact = true;
        x1_exact = l;
    } else if (e0 > e1) {
        throw InputError("solve_slice_search: g_0 > g_1 on the curve at lambda = " + to_string(l) +
                         " (boundary-sign precondition violated)");
    }
    if (!found_exact) {
        probe(r, e0, e1);
        if (e0 == e1) {
            found_exact = true;
            x1_exact = r;
        } else if (e0 < e1) {
            throw InputError("solve_slice_search: g_0 < g_1 on the curve at lambda = " +
                             to_string(r) + " (boundary-sign precondition violated)");
        }
    }

    while (!found_exact && r - l > cfg.epsilon0) {
        const Rat mid = (l + r) / 2;
        probe(mid, e0, e1);
        rep.iterations.push_back({l, r, e0, e1});
        if (e0 == e1) {
            rep.early_exact = true;
            found_exact = true;
            x1_exact = mid;
            break;
        }
        if (e0 < e1)
            l = mid;
        else
            r = mid;
    }

    rep.x1_prime = found_exact ? x1_exact : l;

    const SlicePoint fin = eval_E1(rep.x1_prime, problem, cfg, lo, hi);
    const PointX x{fin.lambda, fin.x2};
    const ChainSelection chain{eval_envelope(0, x, problem).argmin,
                               eval_envelope(1, x, problem).argmin,
                               eval_envelope(2, x, problem).argmin};
    const LiftedPoint point = snap_to_exact(problem.state_sets[0][chain[0]],
                                            problem.state_sets[1][chain[1]],
                                            problem.state_sets[2][chain[2]], problem);

    SolveResult result;
    result.chain = chain;
    result.point = point;
    result.trace.steps.push_back({chain, point.x, point.y});
    return result;
}

BoundaryReport boundary_sign_check(const ProblemSpec& problem, int samples_per_edge,
                                   int n_symbols) {
    require_m3(problem, "boundary_sign_check");
    if (samples_per_edge < 2)
        throw InputError("boundary_sign_check: need at least 2 samples per edge");

    BoundaryReport rep;
    if (n_symbols >= 0 && n_symbols < 7) {
        rep.skipped = true;
        rep.note = "boundary-sign property is only guaranteed for n >= 7 symbols (n = " +
                   std::to_string(n_symbols) + "); check skipped";
        return rep;
    }

    for (int k : {1, 2})
        for (int side : {0, 1})
            for (int i = 0; i < samples_per_edge; ++i) {
                const Rat t = rat(i, samples_per_edge - 1);
                PointX x{Rat(side), Rat(side)};
                x[k - 1] = side;
                x[k == 1 ? 1 : 0] = t;
                const Rat g0 = eval_envelope(0, x, problem).value;
                const Rat gk = eval_envelope(k, x, problem).value;
                const Rat diff = side == 0 ? g0 - gk : gk - g0;
                ++rep.samples;
                if (diff > 0) rep.violations.push_back({k, side, x, diff});
            }
    return rep;
}

}  // namespace mcp
