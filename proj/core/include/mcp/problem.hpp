#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mcp/rational.hpp"

namespace mcp {

/// One Markov chain state of some type k: a nonnegative reward and an exact
/// transition distribution over the m types. Validity: transitions.size() == m,
/// every entry >= 0, the entries sum to 1, and transitions[0] > 0.
struct StateSpec {
    Rat reward;
    std::vector<Rat> transitions;

    bool operator==(const StateSpec&) const = default;
};

/// A finite state set per type. state_sets[k] lists the candidate states of
/// type k; a permissible chain picks exactly one state from each set.
struct ProblemSpec {
    std::vector<std::vector<StateSpec>> state_sets;

    int num_types() const { return static_cast<int>(state_sets.size()); }

    /// Product of the per-type set sizes, saturating at cap.
    unsigned long long chain_count(unsigned long long cap) const;
};

/// Index of the chosen state per type; selection[k] indexes state_sets[k].
using ChainSelection = std::vector<int>;

/// A point x in R^{m-1}; coords[j-1] corresponds to type j (types 1..m-1).
using PointX = std::vector<Rat>;

/// A point of the lifted space (x, y) with x in R^{m-1}.
struct LiftedPoint {
    PointX x;
    Rat y;

    bool operator==(const LiftedPoint&) const = default;
};

/// Value of a per-type lower envelope together with its argmin state index
/// (smallest index on ties).
struct EnvelopeEval {
    Rat value;
    int argmin;

    bool operator==(const EnvelopeEval&) const = default;
};

/// Throws InputError unless the problem is well formed: m >= 2 types,
/// every state set nonempty, and every state valid for m = num_types().
void validate_problem(const ProblemSpec& problem);

/// Throws InputError unless the state is valid for the given type count.
void validate_state(const StateSpec& state, int num_types, const std::string& where);

/// Throws InputError unless selection picks a valid index for every type.
void validate_selection(const ProblemSpec& problem, const ChainSelection& selection);

/// The states picked by a (validated) selection, one per type.
std::vector<StateSpec> resolve_chain(const ProblemSpec& problem, const ChainSelection& selection);

}  // namespace mcp
