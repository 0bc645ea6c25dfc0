#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mcp/aifv.hpp"
#include "mcp/problem.hpp"

namespace mcp {

struct HeightSample {
    PointX x;
    Rat h;
};

/// Exhaustive-search result. all_costs lists every chain's cost in odometer
/// order (last index fastest) and is complete whenever the chain product is
/// at most kAllCostsRetentionCap; beyond that only best_chain/best_cost are
/// kept. samples optionally carries a sampled (x, h(x)) grid.
struct OracleReport {
    ChainSelection best_chain;
    Rat best_cost;
    std::vector<Rat> all_costs;
    std::vector<HeightSample> samples;
};

inline constexpr unsigned long long kDefaultOracleBudget = 2'000'000;
inline constexpr unsigned long long kAllCostsRetentionCap = 200'000;

/// Enumerates every permissible chain, costing each one through an
/// independent stationary-distribution solve (a deliberately separate code
/// path from the solver's geometry). Ties go to the lexicographically
/// smallest index vector. A chain product above budget raises BudgetError.
OracleReport brute_force_min(const ProblemSpec& problem,
                             unsigned long long budget = kDefaultOracleBudget);

/// Max of eval_h over the grid: a lower bound on the polytope height, equal
/// to the optimum's y when the grid contains the optimal x. Empty grid gives
/// nullopt. When samples is non-null, every (x, h(x)) row is appended to it.
std::optional<Rat> sample_height(const ProblemSpec& problem, const std::vector<PointX>& grid,
                                 std::vector<HeightSample>* samples = nullptr);

struct RoundtripReport {
    bool ok = true;
    unsigned long long sequences_checked = 0;
    std::vector<int> counterexample;  // first failing symbol sequence, empty when ok
    std::string detail;
};

/// Checks decode(encode(s), |s|) = s, with full bit consumption, for every
/// sequence s of length 0..max_len over the code's alphabet. The first
/// failure is reported with its sequence. A sequence count above budget
/// raises BudgetError.
RoundtripReport exhaustive_roundtrip(const AifvCode& code, int max_len,
                                     unsigned long long budget = kDefaultOracleBudget);

}  // namespace mcp
