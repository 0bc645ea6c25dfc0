#include "mcp/oracle.hpp"

#include <sstream>

#include "mcp/errors.hpp"
#include "mcp/geometry.hpp"

namespace mcp {

namespace {

// Stationary distribution by direct Gaussian elimination on the full m x m
// system: balance equations for states 1..m-1 plus normalization in place of
// the (linearly dependent) balance equation for state 0. Kept separate from
// the solver's reachability-restricted route on purpose: the two only agree
// if both are right.
std::vector<Rat> oracle_stationary(const std::vector<StateSpec>& chain) {
    const int m = static_cast<int>(chain.size());
    std::vector<std::vector<Rat>> a(m, std::vector<Rat>(m + 1, Rat(0)));
    for (int j = 0; j < m; ++j) a[0][j] = 1;
    a[0][m] = 1;
    for (int i = 1; i < m; ++i) {
        for (int j = 0; j < m; ++j) a[i][j] = chain[j].transitions[i];
        a[i][i] -= 1;
    }

    for (int col = 0; col < m; ++col) {
        int pivot = -1;
        for (int row = col; row < m; ++row) {
            if (a[row][col] != 0) {
                pivot = row;
                break;
            }
        }
        if (pivot < 0)
            throw InternalError("oracle_stationary: singular balance system (contradicts unichain)");
        std::swap(a[col], a[pivot]);
        for (int row = col + 1; row < m; ++row) {
            if (a[row][col] == 0) continue;
            Rat factor = a[row][col] / a[col][col];
            for (int j = col; j <= m; ++j) a[row][j] -= factor * a[col][j];
        }
    }

    std::vector<Rat> pi(m, Rat(0));
    for (int row = m - 1; row >= 0; --row) {
        Rat rhs = a[row][m];
        for (int j = row + 1; j < m; ++j) rhs -= a[row][j] * pi[j];
        pi[row] = rhs / a[row][row];
    }
    for (int j = 0; j < m; ++j) {
        if (pi[j] < 0)
            throw InternalError("oracle_stationary: negative stationary mass (contradicts unichain)");
    }
    return pi;
}

Rat oracle_cost(const std::vector<StateSpec>& chain) {
    std::vector<Rat> pi = oracle_stationary(chain);
    Rat cost(0);
    for (size_t k = 0; k < chain.size(); ++k) cost += chain[k].reward * pi[k];
    return cost;
}

}  // namespace

OracleReport brute_force_min(const ProblemSpec& problem, unsigned long long budget) {
    validate_problem(problem);
    const unsigned long long count = problem.chain_count(~0ULL);
    if (count > budget) {
        std::ostringstream msg;
        msg << "brute_force_min: " << count << " chains exceed the budget of " << budget;
        throw BudgetError(msg.str());
    }

    const int m = problem.num_types();
    const bool keep_all = count <= kAllCostsRetentionCap;

    OracleReport report;
    if (keep_all) report.all_costs.reserve(count);

    ChainSelection sel(m, 0);
    std::vector<StateSpec> chain(m);
    bool first = true;
    while (true) {
        for (int k = 0; k < m; ++k) chain[k] = problem.state_sets[k][sel[k]];
        Rat cost = oracle_cost(chain);
        if (keep_all) report.all_costs.push_back(cost);
        if (first || cost < report.best_cost) {
            report.best_chain = sel;
            report.best_cost = cost;
            first = false;
        }
        int k = m - 1;
        while (k >= 0 && sel[k] + 1 == static_cast<int>(problem.state_sets[k].size())) {
            sel[k] = 0;
            --k;
        }
        if (k < 0) break;
        ++sel[k];
    }
    return report;
}

std::optional<Rat> sample_height(const ProblemSpec& problem, const std::vector<PointX>& grid,
                                 std::vector<HeightSample>* samples) {
    validate_problem(problem);
    std::optional<Rat> best;
    for (const PointX& x : grid) {
        Rat h = eval_h(x, problem);
        if (samples) samples->push_back({x, h});
        if (!best || h > *best) best = h;
    }
    return best;
}

RoundtripReport exhaustive_roundtrip(const AifvCode& code, int max_len,
                                     unsigned long long budget) {
    if (max_len < 0) throw InputError("exhaustive_roundtrip: max_len must be nonnegative");
    const unsigned long long n = code.num_symbols();
    unsigned long long total = 0;
    unsigned long long pow = 1;
    for (int len = 0; len <= max_len; ++len) {
        if (pow > budget - total) {
            std::ostringstream msg;
            msg << "exhaustive_roundtrip: sequence count exceeds the budget of " << budget;
            throw BudgetError(msg.str());
        }
        total += pow;
        if (len < max_len) {
            if (n != 0 && pow > budget / n) {
                std::ostringstream msg;
                msg << "exhaustive_roundtrip: sequence count exceeds the budget of " << budget;
                throw BudgetError(msg.str());
            }
            pow *= n;
        }
    }

    RoundtripReport report;
    std::vector<int> seq;
    for (int len = 0; len <= max_len; ++len) {
        seq.assign(len, 0);
        while (true) {
            ++report.sequences_checked;
            std::string bits = encode(code, seq);
            std::ostringstream fail;
            try {
                size_t consumed = 0;
                std::vector<int> back = decode(code, bits, len, &consumed);
                if (back != seq) {
                    fail << "decoded sequence differs from the original";
                } else if (consumed != bits.size()) {
                    fail << "decode consumed " << consumed << " of " << bits.size() << " bits";
                }
            } catch (const DecodeError& e) {
                fail << e.what();
            }
            if (!fail.str().empty()) {
                report.ok = false;
                report.counterexample = seq;
                report.detail = fail.str();
                return report;
            }
            int k = len - 1;
            while (k >= 0 && seq[k] + 1 == static_cast<int>(n)) {
                seq[k] = 0;
                --k;
            }
            if (k < 0) break;
            ++seq[k];
        }
        if (n == 0) break;
    }
    return report;
}

}  // namespace mcp
