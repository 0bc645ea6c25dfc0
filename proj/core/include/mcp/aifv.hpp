#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mcp/errors.hpp"
#include "mcp/problem.hpp"
#include "mcp/rational.hpp"

namespace mcp {

/// AIFV node kinds. Shape rules: Complete has both children; Intermediate0
/// only a 0-child; Intermediate1 only a 1-child; Master(degree d) carries a
/// symbol, is a leaf when d = 0, and for d >= 1 has a single 0-child starting
/// a run of exactly d Intermediate0 nodes (the node below the run exists and
/// is not Intermediate0).
enum class NodeKind { Complete, Intermediate0, Intermediate1, Master };

struct AifvNode {
    NodeKind kind = NodeKind::Master;
    int zero_child = -1;  // index into AifvTree::nodes, -1 = absent
    int one_child = -1;
    int degree = 0;   // masters only, in [0, m)
    int symbol = -1;  // masters only: index into the code's alphabet

    bool operator==(const AifvNode&) const = default;
};

/// A code tree. nodes[0] is the root; enumeration and parsing lay nodes out
/// in preorder. Type-k validity additionally requires node 0^k to exist and
/// be Intermediate1 for k >= 1, and every source symbol to appear on exactly
/// one master.
struct AifvTree {
    std::vector<AifvNode> nodes;

    bool operator==(const AifvTree&) const = default;
};

/// An AIFV-m code: m trees over a shared alphabet; trees[k] is a type-k tree.
struct AifvCode {
    std::vector<std::string> symbols;
    std::vector<AifvTree> trees;

    int num_types() const { return static_cast<int>(trees.size()); }
    int num_symbols() const { return static_cast<int>(symbols.size()); }
};

/// A finite source: n symbols with exact dyadic probabilities, all integer
/// multiples of 2^-b.
struct SourceDistribution {
    unsigned b = 1;
    std::vector<std::string> symbols;
    std::vector<Rat> probs;

    int num_symbols() const { return static_cast<int>(symbols.size()); }
};

/// Throws InputError unless probs are positive, sum to 1, match the symbol
/// count, and have denominators dividing 2^b.
void validate_source(const SourceDistribution& source);

/// Checks the AIFV type-k tree invariants. Returns human-readable violations
/// (empty = valid). A malformed node graph (bad indices, shared children,
/// cycles, unreachable nodes) throws InputError instead.
std::vector<std::string> validate_tree(const AifvTree& tree, int k, int m, int n);

/// Every valid type-k tree over n symbols with at most max_nodes nodes,
/// each exactly once, in a deterministic canonical order (preorder kind
/// order: Complete, Intermediate0, Intermediate1, Master by ascending
/// degree; symbol labelings in lexicographic order).
std::vector<AifvTree> enumerate_trees(int k, int m, int n, int max_nodes);

/// Reward and transition vector of a valid tree: reward = sum of codeword
/// lengths weighted by p, q_j = total p of symbols on degree-j masters.
StateSpec tree_to_state(const AifvTree& tree, const SourceDistribution& source, int m);

/// Canonical textual form of a tree (preorder walk with kinds, degrees,
/// symbols); used for deduplication and golden files.
std::string canonical_tree_encoding(const AifvTree& tree);

/// Encodes symbol indices, starting at tree 0 and switching to tree d after
/// emitting from a degree-d master. Unknown symbol indices throw InputError.
std::string encode(const AifvCode& code, const std::vector<int>& symbols);

/// Decodes by repeatedly stripping the longest prefix of bits that reaches a
/// master of the current tree (the deepest master on the walked path, the
/// root included), emitting its symbol, and switching trees. Exactly num_symbols
/// symbols are decoded; *consumed reports how many bits were used.
/// Throws DecodeError when bits run out or no master was visited.
std::vector<int> decode(const AifvCode& code, const std::string& bits, std::size_t num_symbols,
                        std::size_t* consumed = nullptr);

class DecodeError : public InputError {
public:
    explicit DecodeError(const std::string& what) : InputError(what) {}
};

/// The default enumeration cap: 3n + m nodes.
int default_max_nodes(int n, int m);

/// The minimum-cost Markov chain problem induced by capped enumeration,
/// with a side table mapping each state back to a representative tree.
/// States are deduplicated (distinct (reward, q) only) and sorted
/// ascending by (reward, q).
struct AifvProblem {
    ProblemSpec problem;
    std::vector<std::vector<AifvTree>> state_trees;  // [k][state index]
    SourceDistribution source;
    int max_nodes = 0;
};

/// Builds the capped AIFV-m problem for the source. Throws InputError when
/// some type enumerates no valid tree ("cap too small").
AifvProblem aifv_problem(const SourceDistribution& source, int m, int max_nodes);

/// The code picked out of an AifvProblem by a chain selection.
AifvCode code_from_chain(const AifvProblem& ap, const ChainSelection& selection);

}  // namespace mcp
