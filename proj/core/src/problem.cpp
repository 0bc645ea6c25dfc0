#include "mcp/problem.hpp"

#include "mcp/errors.hpp"

namespace mcp {

unsigned long long ProblemSpec::chain_count(unsigned long long cap) const {
    unsigned long long product = 1;
    for (const auto& set : state_sets) {
        const unsigned long long size = set.size();
        if (size == 0) return 0;
        if (product > cap / size) return cap;
        product *= size;
    }
    return product < cap ? product : cap;
}

void validate_state(const StateSpec& state, int num_types, const std::string& where) {
    if (state.reward < 0) throw InputError(where + ": negative reward");
    if (static_cast<int>(state.transitions.size()) != num_types)
        throw InputError(where + ": expected " + std::to_string(num_types) +
                         " transition probabilities, got " + std::to_string(state.transitions.size()));
    Rat sum = 0;
    for (const Rat& q : state.transitions) {
        if (q < 0) throw InputError(where + ": negative transition probability");
        sum += q;
    }
    if (sum != 1) throw InputError(where + ": transition probabilities sum to " + to_string(sum) + ", not 1");
    if (state.transitions[0] <= 0) throw InputError(where + ": transition to type 0 must be positive");
}

void validate_problem(const ProblemSpec& problem) {
    const int m = problem.num_types();
    if (m < 2) throw InputError("problem needs at least 2 types, got " + std::to_string(m));
    for (int k = 0; k < m; ++k) {
        if (problem.state_sets[k].empty())
            throw InputError("state set for type " + std::to_string(k) + " is empty");
        for (std::size_t i = 0; i < problem.state_sets[k].size(); ++i)
            validate_state(problem.state_sets[k][i], m,
                           "type " + std::to_string(k) + " state " + std::to_string(i));
    }
}

void validate_selection(const ProblemSpec& problem, const ChainSelection& selection) {
    const int m = problem.num_types();
    if (static_cast<int>(selection.size()) != m)
        throw InputError("chain selection has " + std::to_string(selection.size()) +
                         " entries, expected " + std::to_string(m));
    for (int k = 0; k < m; ++k)
        if (selection[k] < 0 || selection[k] >= static_cast<int>(problem.state_sets[k].size()))
            throw InputError("chain selection index " + std::to_string(selection[k]) +
                             " out of range for type " + std::to_string(k));
}

std::vector<StateSpec> resolve_chain(const ProblemSpec& problem, const ChainSelection& selection) {
    validate_selection(problem, selection);
    std::vector<StateSpec> chain;
    chain.reserve(selection.size());
    for (int k = 0; k < problem.num_types(); ++k)
        chain.push_back(problem.state_sets[k][selection[k]]);
    return chain;
}

}  // namespace mcp
