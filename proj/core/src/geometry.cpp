#include "mcp/geometry.hpp"

#include <cstddef>

#include "mcp/errors.hpp"

namespace mcp {

Rat eval_f(int k, const PointX& x, const StateSpec& s) {
    const int m = s.transitions.size();
    if (static_cast<int>(x.size()) != m - 1)
        throw InputError("eval_f: point has " + std::to_string(x.size()) +
                         " coords, state implies m = " + std::to_string(m));
    if (k < 0 || k >= m) throw InputError("eval_f: type index " + std::to_string(k) + " out of range");
    Rat value = s.reward;
    for (int j = 1; j < m; ++j) value += s.transitions[j] * x[j - 1];
    if (k > 0) value -= x[k - 1];
    return value;
}

EnvelopeEval eval_envelope(int k, const PointX& x, const ProblemSpec& problem) {
    const int m = problem.num_types();
    if (k < 0 || k >= m) throw InputError("eval_envelope: type index " + std::to_string(k) + " out of range");
    const auto& states = problem.state_sets[k];
    if (states.empty()) throw InputError("eval_envelope: empty state set for type " + std::to_string(k));
    EnvelopeEval best{eval_f(k, x, states[0]), 0};
    for (int i = 1; i < static_cast<int>(states.size()); ++i) {
        Rat v = eval_f(k, x, states[i]);
        if (v < best.value) best = {std::move(v), i};
    }
    return best;
}

Rat eval_h(const PointX& x, const ProblemSpec& problem) {
    Rat best = eval_envelope(0, x, problem).value;
    for (int k = 1; k < problem.num_types(); ++k) {
        Rat v = eval_envelope(k, x, problem).value;
        if (v < best) best = std::move(v);
    }
    return best;
}

int classify_cone(const std::vector<Rat>& u) {
    int argmax = -1;
    for (int j = 0; j < static_cast<int>(u.size()); ++j)
        if (argmax < 0 || u[j] > u[argmax]) argmax = j;
    if (argmax < 0 || u[argmax] <= 0) return 0;
    return argmax + 1;
}

std::optional<std::vector<Rat>> solve_linear_system(std::vector<std::vector<Rat>> a,
                                                    std::vector<Rat> b) {
    const int n = a.size();
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        while (pivot < n && a[pivot][col] == 0) ++pivot;
        if (pivot == n) return std::nullopt;
        std::swap(a[pivot], a[col]);
        std::swap(b[pivot], b[col]);
        const Rat inv = 1 / a[col][col];
        for (int j = col; j < n; ++j) a[col][j] *= inv;
        b[col] *= inv;
        for (int row = 0; row < n; ++row) {
            if (row == col || a[row][col] == 0) continue;
            const Rat factor = a[row][col];
            for (int j = col; j < n; ++j) a[row][j] -= factor * a[col][j];
            b[row] -= factor * b[col];
        }
    }
    return b;
}

LiftedPoint multi_typed_intersection(const std::vector<StateSpec>& chain) {
    const int m = chain.size();
    for (int k = 0; k < m; ++k) validate_state(chain[k], m, "chain state " + std::to_string(k));

    // Unknowns (x_1, ..., x_{m-1}, y); row k encodes f_k(x, S_k) = y.
    std::vector<std::vector<Rat>> a(m, std::vector<Rat>(m, Rat(0)));
    std::vector<Rat> b(m);
    for (int k = 0; k < m; ++k) {
        for (int j = 1; j < m; ++j) a[k][j - 1] = chain[k].transitions[j];
        if (k > 0) a[k][k - 1] -= 1;
        a[k][m - 1] = -1;
        b[k] = -chain[k].reward;
    }
    auto solution = solve_linear_system(std::move(a), std::move(b));
    if (!solution)
        throw InternalError("multi_typed_intersection: singular system (a permissible chain's "
                            "hyperplanes always meet in a single point; an invalid state slipped "
                            "past validation)");
    LiftedPoint point;
    point.x.assign(solution->begin(), solution->end() - 1);
    point.y = solution->back();
    return point;
}

std::vector<Rat> stationary_distribution(const std::vector<StateSpec>& chain) {
    const int m = chain.size();
    for (int k = 0; k < m; ++k) validate_state(chain[k], m, "chain state " + std::to_string(k));

    // Types reachable from type 0 form the single recurrent class (every
    // state has q_0 > 0, so the class communicates through type 0); the rest
    // are transient and carry zero mass.
    std::vector<int> reach{0};
    std::vector<bool> seen(m, false);
    seen[0] = true;
    for (std::size_t i = 0; i < reach.size(); ++i)
        for (int j = 0; j < m; ++j)
            if (!seen[j] && chain[reach[i]].transitions[j] > 0) {
                seen[j] = true;
                reach.push_back(j);
            }

    // Restricted balance equations pi (Q_R - I) = 0 plus normalization;
    // Gauss-Jordan with an exact consistency check on the extra row.
    const int r = reach.size();
    std::vector<std::vector<Rat>> a(r + 1, std::vector<Rat>(r, Rat(0)));
    std::vector<Rat> b(r + 1, Rat(0));
    for (int j = 0; j < r; ++j)
        for (int i = 0; i < r; ++i) {
            a[j][i] = chain[reach[i]].transitions[reach[j]];
            if (i == j) a[j][i] -= 1;
        }
    for (int i = 0; i < r; ++i) a[r][i] = 1;
    b[r] = 1;

    int rank = 0;
    std::vector<int> pivot_col(r + 1, -1);
    for (int col = 0; col < r && rank <= r; ++col) {
        int pivot = rank;
        while (pivot <= r && a[pivot][col] == 0) ++pivot;
        if (pivot > r) continue;
        std::swap(a[pivot], a[rank]);
        std::swap(b[pivot], b[rank]);
        const Rat inv = 1 / a[rank][col];
        for (int j = col; j < r; ++j) a[rank][j] *= inv;
        b[rank] *= inv;
        for (int row = 0; row <= r; ++row) {
            if (row == rank || a[row][col] == 0) continue;
            const Rat factor = a[row][col];
            for (int j = col; j < r; ++j) a[row][j] -= factor * a[rank][j];
            b[row] -= factor * b[rank];
        }
        pivot_col[rank] = col;
        ++rank;
    }
    if (rank != r)
        throw InternalError("stationary_distribution: rank-deficient balance system (contradicts unichain)");
    for (int row = rank; row <= r; ++row)
        if (b[row] != 0)
            throw InternalError("stationary_distribution: inconsistent balance system (contradicts unichain)");

    std::vector<Rat> pi(m, Rat(0));
    for (int row = 0; row < rank; ++row) pi[reach[pivot_col[row]]] = b[row];
    for (const Rat& p : pi)
        if (p < 0) throw InternalError("stationary_distribution: negative mass (contradicts unichain)");
    return pi;
}

Rat chain_cost(const std::vector<StateSpec>& chain) {
    const std::vector<Rat> pi = stationary_distribution(chain);
    Rat cost = 0;
    for (std::size_t k = 0; k < chain.size(); ++k) cost += chain[k].reward * pi[k];
    return cost;
}

}  // namespace mcp
