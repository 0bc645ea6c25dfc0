#include <algorithm>
#include <string>
#include <vector>

#include "mcp/aifv.hpp"
#include "mcp/errors.hpp"

namespace mcp {

namespace {

// Verifies the node graph is a tree rooted at node 0 (indices valid, every
// non-root node has exactly one parent, all nodes reachable). Throws
// InputError otherwise; AIFV rule violations are reported by validate_tree.
void check_graph(const AifvTree& tree) {
    const int size = tree.nodes.size();
    if (size == 0) throw InputError("tree has no nodes");
    std::vector<int> indegree(size, 0);
    for (int i = 0; i < size; ++i) {
        for (int child : {tree.nodes[i].zero_child, tree.nodes[i].one_child}) {
            if (child == -1) continue;
            if (child < 0 || child >= size)
                throw InputError("node " + std::to_string(i) + ": child index " +
                                 std::to_string(child) + " out of range");
            ++indegree[child];
        }
    }
    if (indegree[0] != 0) throw InputError("root has a parent");
    for (int i = 1; i < size; ++i)
        if (indegree[i] != 1)
            throw InputError("node " + std::to_string(i) + " has " + std::to_string(indegree[i]) +
                             " parents");
    std::vector<int> stack{0};
    std::vector<bool> seen(size, false);
    seen[0] = true;
    int visited = 0;
    while (!stack.empty()) {
        const int i = stack.back();
        stack.pop_back();
        ++visited;
        for (int child : {tree.nodes[i].zero_child, tree.nodes[i].one_child})
            if (child != -1 && !seen[child]) {
                seen[child] = true;
                stack.push_back(child);
            }
    }
    if (visited != size) throw InputError("tree has unreachable nodes");
}

}  // namespace

std::vector<std::string> validate_tree(const AifvTree& tree, int k, int m, int n) {
    check_graph(tree);
    std::vector<std::string> violations;
    auto flag = [&](const std::string& msg) { violations.push_back(msg); };

    for (int i = 0; i < static_cast<int>(tree.nodes.size()); ++i) {
        const AifvNode& node = tree.nodes[i];
        const std::string where = "node " + std::to_string(i) + ": ";
        switch (node.kind) {
            case NodeKind::Complete:
                if (node.zero_child == -1 || node.one_child == -1)
                    flag(where + "complete node missing a child");
                break;
            case NodeKind::Intermediate0:
                if (node.zero_child == -1) flag(where + "intermediate-0 node missing its 0-child");
                if (node.one_child != -1) flag(where + "intermediate-0 node has a 1-child");
                break;
            case NodeKind::Intermediate1:
                if (node.one_child == -1) flag(where + "intermediate-1 node missing its 1-child");
                if (node.zero_child != -1) flag(where + "intermediate-1 node has a 0-child");
                break;
            case NodeKind::Master: {
                if (node.degree < 0 || node.degree >= m)
                    flag(where + "master degree " + std::to_string(node.degree) +
                         " outside [0, " + std::to_string(m) + ")");
                if (node.one_child != -1) flag(where + "master node has a 1-child");
                if (node.degree == 0 && node.zero_child != -1)
                    flag(where + "degree-0 master is not a leaf");
                if (node.degree > 0) {
                    // Exactly `degree` intermediate-0 nodes below, then a
                    // non-intermediate-0 node.
                    int v = node.zero_child;
                    for (int t = 1; t <= node.degree; ++t) {
                        if (v == -1) {
                            flag(where + "degree-" + std::to_string(node.degree) +
                                 " master run ends " + std::to_string(t - 1) + " deep");
                            break;
                        }
                        if (tree.nodes[v].kind != NodeKind::Intermediate0) {
                            flag(where + "master run node " + std::to_string(t) +
                                 " is not intermediate-0");
                            break;
                        }
                        v = tree.nodes[v].zero_child;
                    }
                    if (v != -1 && tree.nodes[v].kind == NodeKind::Intermediate0)
                        flag(where + "master run longer than degree " + std::to_string(node.degree));
                }
                if (node.symbol < 0 || node.symbol >= n)
                    flag(where + "master symbol index " + std::to_string(node.symbol) +
                         " outside [0, " + std::to_string(n) + ")");
                break;
            }
        }
        if (node.kind != NodeKind::Master && node.symbol != -1)
            flag(where + "non-master node carries a symbol");
    }

    // Condition 2: node 0^k exists and is intermediate-1 (k >= 1 only).
    if (k >= 1) {
        int v = 0;
        for (int step = 0; step < k && v != -1; ++step) v = tree.nodes[v].zero_child;
        if (v == -1)
            flag("node 0^" + std::to_string(k) + " does not exist");
        else if (tree.nodes[v].kind != NodeKind::Intermediate1)
            flag("node 0^" + std::to_string(k) + " is not intermediate-1");
    }

    std::vector<int> symbol_count(std::max(n, 1), 0);
    for (const AifvNode& node : tree.nodes)
        if (node.kind == NodeKind::Master && node.symbol >= 0 && node.symbol < n)
            ++symbol_count[node.symbol];
    for (int s = 0; s < n; ++s)
        if (symbol_count[s] != 1)
            flag("symbol " + std::to_string(s) + " appears on " + std::to_string(symbol_count[s]) +
                 " masters");

    return violations;
}

StateSpec tree_to_state(const AifvTree& tree, const SourceDistribution& source, int m) {
    check_graph(tree);
    const int n = source.num_symbols();
    StateSpec state;
    state.reward = 0;
    state.transitions.assign(m, Rat(0));
    std::vector<int> seen(n, 0);

    struct Frame {
        int node;
        int depth;
    };
    std::vector<Frame> stack{{0, 0}};
    while (!stack.empty()) {
        const Frame f = stack.back();
        stack.pop_back();
        const AifvNode& node = tree.nodes[f.node];
        if (node.kind == NodeKind::Master) {
            if (node.symbol < 0 || node.symbol >= n)
                throw InputError("tree_to_state: master symbol index " +
                                 std::to_string(node.symbol) + " not in the source alphabet");
            if (node.degree < 0 || node.degree >= m)
                throw InputError("tree_to_state: master degree " + std::to_string(node.degree) +
                                 " outside [0, " + std::to_string(m) + ")");
            if (seen[node.symbol]++)
                throw InputError("tree_to_state: symbol " + std::to_string(node.symbol) +
                                 " assigned twice");
            state.reward += Rat(f.depth) * source.probs[node.symbol];
            state.transitions[node.degree] += source.probs[node.symbol];
        }
        if (node.one_child != -1) stack.push_back({node.one_child, f.depth + 1});
        if (node.zero_child != -1) stack.push_back({node.zero_child, f.depth + 1});
    }
    for (int s = 0; s < n; ++s)
        if (!seen[s]) throw InputError("tree_to_state: symbol " + std::to_string(s) + " unassigned");
    return state;
}

std::string canonical_tree_encoding(const AifvTree& tree) {
    std::string out;
    auto walk = [&](auto&& self, int i) -> void {
        const AifvNode& node = tree.nodes[i];
        switch (node.kind) {
            case NodeKind::Complete:
                out += "C(";
                self(self, node.zero_child);
                out += ",";
                self(self, node.one_child);
                out += ")";
                break;
            case NodeKind::Intermediate0:
                out += "I0(";
                self(self, node.zero_child);
                out += ")";
                break;
            case NodeKind::Intermediate1:
                out += "I1(";
                self(self, node.one_child);
                out += ")";
                break;
            case NodeKind::Master:
                out += "M" + std::to_string(node.degree) + "[" + std::to_string(node.symbol) + "]";
                if (node.zero_child != -1) {
                    out += "(";
                    self(self, node.zero_child);
                    out += ")";
                }
                break;
        }
    };
    walk(walk, 0);
    return out;
}

int default_max_nodes(int n, int m) { return 3 * n + m; }

void validate_source(const SourceDistribution& source) {
    const int n = source.num_symbols();
    if (n < 1) throw InputError("source has no symbols");
    if (static_cast<int>(source.probs.size()) != n)
        throw InputError("source has " + std::to_string(source.probs.size()) + " probabilities for " +
                         std::to_string(n) + " symbols");
    Rat sum = 0;
    for (int i = 0; i < n; ++i) {
        if (source.probs[i] <= 0)
            throw InputError("source probability " + std::to_string(i) + " not positive");
        if (!is_dyadic(source.probs[i], source.b))
            throw InputError("source probability " + to_string(source.probs[i]) +
                             " is not a multiple of 2^-" + std::to_string(source.b));
        sum += source.probs[i];
    }
    if (sum != 1) throw InputError("source probabilities sum to " + to_string(sum) + ", not 1");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (source.symbols[i] == source.symbols[j])
                throw InputError("duplicate source symbol '" + source.symbols[i] + "'");
}

}  // namespace mcp
