#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mcp/aifv.hpp"
#include "mcp/errors.hpp"

namespace mcp {

namespace {

// A master position discovered during structure enumeration.
struct Slot {
    int depth;
    int degree;
    int node;
};

// An unfilled subtree root: where it attaches, the distance to the forced
// intermediate-1 node when on the 0-spine (-1 when unconstrained, 0 when the
// node itself must be intermediate-1), and whether intermediate-0 is banned
// here (node right below a master's run).
struct Hole {
    int parent;
    bool one_edge;
    int spine;
    bool forbid_i0;
    int depth;
};

// Enumerates every unlabeled type-k structure with exactly n masters and at
// most max_nodes nodes, in a fixed preorder kind order (Complete,
// Intermediate0, Intermediate1, Master by ascending degree). Holes are
// filled depth-first, 0-side first, so each structure is produced exactly
// once and the overall order is canonical.
class StructureEnumerator {
public:
    using Callback = std::function<void(const std::vector<AifvNode>&, const std::vector<Slot>&)>;

    StructureEnumerator(int k, int m, int n, int max_nodes, Callback callback)
        : m_(m), n_(n), max_nodes_(max_nodes), callback_(std::move(callback)) {
        holes_.push_back({-1, false, k == 0 ? -1 : k, false, 0});
    }

    void run() { step(); }

private:
    bool feasible() const {
        const int budget = max_nodes_ - static_cast<int>(nodes_.size());
        const int masters_left = n_ - static_cast<int>(slots_.size());
        if (masters_left < static_cast<int>(holes_.size())) return false;
        int min_nodes = 0;
        int forced_non_masters = 0;
        for (const Hole& h : holes_) {
            min_nodes += h.spine >= 0 ? h.spine + 2 : 1;
            forced_non_masters += h.spine >= 0 ? 1 : 0;
        }
        if (budget < min_nodes) return false;
        if (masters_left > budget - forced_non_masters) return false;
        // A subtree of N nodes holds at most (N+1)/2 masters.
        if (2 * masters_left > budget + static_cast<int>(holes_.size())) return false;
        return true;
    }

    int attach(NodeKind kind, const Hole& h, int degree) {
        const int idx = nodes_.size();
        nodes_.push_back({kind, -1, -1, degree, -1});
        if (h.parent >= 0)
            (h.one_edge ? nodes_[h.parent].one_child : nodes_[h.parent].zero_child) = idx;
        return idx;
    }

    void detach(const Hole& h, int idx) {
        nodes_.resize(idx);
        if (h.parent >= 0)
            (h.one_edge ? nodes_[h.parent].one_child : nodes_[h.parent].zero_child) = -1;
    }

    void step() {
        if (holes_.empty()) {
            if (static_cast<int>(slots_.size()) == n_) callback_(nodes_, slots_);
            return;
        }
        if (!feasible()) return;

        const Hole h = holes_.back();
        holes_.pop_back();
        const int child_spine = h.spine > 0 ? h.spine - 1 : -1;

        if (h.spine != 0) {  // Complete
            const int idx = attach(NodeKind::Complete, h, 0);
            holes_.push_back({idx, true, -1, false, h.depth + 1});
            holes_.push_back({idx, false, child_spine, false, h.depth + 1});
            step();
            holes_.pop_back();
            holes_.pop_back();
            detach(h, idx);
        }
        if (h.spine != 0 && !h.forbid_i0) {  // Intermediate0
            const int idx = attach(NodeKind::Intermediate0, h, 0);
            holes_.push_back({idx, false, child_spine, false, h.depth + 1});
            step();
            holes_.pop_back();
            detach(h, idx);
        }
        if (h.spine <= 0) {  // Intermediate1
            const int idx = attach(NodeKind::Intermediate1, h, 0);
            holes_.push_back({idx, true, -1, false, h.depth + 1});
            step();
            holes_.pop_back();
            detach(h, idx);
        }
        if (static_cast<int>(slots_.size()) < n_) {  // Master(d)
            for (int d = 0; d < m_; ++d) {
                if (d == 0 ? h.spine != -1 : !(h.spine == -1 || d < h.spine)) continue;
                const int idx = attach(NodeKind::Master, h, d);
                slots_.push_back({h.depth, d, idx});
                int run_end = idx;
                for (int t = 0; t < d; ++t) {
                    const int i0 = nodes_.size();
                    nodes_.push_back({NodeKind::Intermediate0, -1, -1, 0, -1});
                    nodes_[run_end].zero_child = i0;
                    run_end = i0;
                }
                if (d > 0)
                    holes_.push_back({run_end, false, h.spine == -1 ? -1 : h.spine - d - 1, true,
                                      h.depth + d + 1});
                step();
                if (d > 0) holes_.pop_back();
                slots_.pop_back();
                detach(h, idx);
            }
        }

        holes_.push_back(h);
    }

    int m_, n_, max_nodes_;
    Callback callback_;
    std::vector<AifvNode> nodes_;
    std::vector<Slot> slots_;
    std::vector<Hole> holes_;
};

}  // namespace

std::vector<AifvTree> enumerate_trees(int k, int m, int n, int max_nodes) {
    if (max_nodes < 1) throw InputError("enumerate_trees: max_nodes must be >= 1");
    if (m < 2) throw InputError("enumerate_trees: m must be >= 2");
    if (k < 0 || k >= m) throw InputError("enumerate_trees: type index out of range");
    if (n < 1) throw InputError("enumerate_trees: n must be >= 1");

    std::vector<AifvTree> out;
    StructureEnumerator gen(k, m, n, max_nodes,
                            [&](const std::vector<AifvNode>& nodes, const std::vector<Slot>& slots) {
                                std::vector<int> perm(slots.size());
                                for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
                                do {
                                    AifvTree tree{nodes};
                                    for (std::size_t i = 0; i < slots.size(); ++i)
                                        tree.nodes[slots[i].node].symbol = perm[i];
                                    out.push_back(std::move(tree));
                                } while (std::next_permutation(perm.begin(), perm.end()));
                            });
    gen.run();
    return out;
}

namespace {

// Slot profile: multiset of (codeword length, degree), the only data about a
// structure that survives into tree_to_state aggregates.
using Profile = std::vector<std::pair<int, int>>;

struct Representative {
    std::vector<AifvNode> nodes;
    std::vector<Slot> slots;
};

std::map<Profile, Representative> collect_profiles(int k, int m, int n, int max_nodes) {
    std::map<Profile, Representative> profiles;
    StructureEnumerator gen(k, m, n, max_nodes,
                            [&](const std::vector<AifvNode>& nodes, const std::vector<Slot>& slots) {
                                Profile p;
                                p.reserve(slots.size());
                                for (const Slot& s : slots) p.emplace_back(s.depth, s.degree);
                                std::sort(p.begin(), p.end());
                                profiles.emplace(std::move(p), Representative{nodes, slots});
                            });
    gen.run();
    return profiles;
}

// Distinct probability values ascending, each with the (sorted) symbol
// indices carrying it.
std::vector<std::pair<Rat, std::vector<int>>> probability_groups(const SourceDistribution& source) {
    std::map<Rat, std::vector<int>> groups;
    for (int i = 0; i < source.num_symbols(); ++i) groups[source.probs[i]].push_back(i);
    return {groups.begin(), groups.end()};
}

}  // namespace

AifvProblem aifv_problem(const SourceDistribution& source, int m, int max_nodes) {
    validate_source(source);
    if (m < 2) throw InputError("aifv_problem: m must be >= 2");
    if (max_nodes < 1) throw InputError("aifv_problem: max_nodes must be >= 1");
    const int n = source.num_symbols();

    const auto value_groups = probability_groups(source);
    const int num_values = value_groups.size();

    AifvProblem ap;
    ap.source = source;
    ap.max_nodes = max_nodes;
    ap.problem.state_sets.resize(m);
    ap.state_trees.resize(m);

    for (int k = 0; k < m; ++k) {
        const auto profiles = collect_profiles(k, m, n, max_nodes);
        if (profiles.empty())
            throw InputError("aifv_problem: no valid type-" + std::to_string(k) +
                             " tree within " + std::to_string(max_nodes) + " nodes (cap too small)");

        // State key (reward, q_0..q_{m-1}) -> labeled representative tree.
        std::map<std::vector<Rat>, AifvTree> states;

        for (const auto& [profile, rep] : profiles) {
            // Slot groups: distinct (length, degree) with their preorder node lists.
            std::map<std::pair<int, int>, std::vector<int>> slot_groups;
            for (const Slot& s : rep.slots) slot_groups[{s.depth, s.degree}].push_back(s.node);
            std::vector<std::pair<int, int>> group_key;
            std::vector<int> group_size;
            for (const auto& [key, nodes] : slot_groups) {
                group_key.push_back(key);
                group_size.push_back(nodes.size());
            }
            const int num_groups = group_key.size();

            // Contingency tables: counts[v][g] symbols of probability value v
            // on slots of group g, with both margins fixed.
            std::vector<std::vector<int>> counts(num_values, std::vector<int>(num_groups, 0));
            std::vector<int> room = group_size;

            auto emit_state = [&]() {
                std::vector<Rat> key(1 + m, Rat(0));
                for (int v = 0; v < num_values; ++v)
                    for (int g = 0; g < num_groups; ++g) {
                        if (!counts[v][g]) continue;
                        const Rat mass = Rat(counts[v][g]) * value_groups[v].first;
                        key[0] += Rat(group_key[g].first) * mass;
                        key[1 + group_key[g].second] += mass;
                    }
                if (states.count(key)) return;

                // Label the representative: walk slot groups in key order,
                // consuming each value group's symbols in index order.
                AifvTree tree{rep.nodes};
                std::vector<int> next(num_values, 0);
                for (int g = 0; g < num_groups; ++g) {
                    auto& nodes = slot_groups[group_key[g]];
                    int at = 0;
                    for (int v = 0; v < num_values; ++v)
                        for (int c = 0; c < counts[v][g]; ++c)
                            tree.nodes[nodes[at++]].symbol = value_groups[v].second[next[v]++];
                }
                states.emplace(std::move(key), std::move(tree));
            };

            auto fill = [&](auto&& self, int v) -> void {
                if (v == num_values) {
                    emit_state();
                    return;
                }
                const int need = value_groups[v].second.size();
                auto place = [&](auto&& inner, int g, int left) -> void {
                    if (g == num_groups - 1) {
                        if (left > room[g]) return;
                        counts[v][g] = left;
                        room[g] -= left;
                        self(self, v + 1);
                        room[g] += left;
                        counts[v][g] = 0;
                        return;
                    }
                    for (int t = 0; t <= std::min(left, room[g]); ++t) {
                        counts[v][g] = t;
                        room[g] -= t;
                        inner(inner, g + 1, left - t);
                        room[g] += t;
                        counts[v][g] = 0;
                    }
                };
                place(place, 0, need);
            };
            fill(fill, 0);
        }

        ap.problem.state_sets[k].reserve(states.size());
        ap.state_trees[k].reserve(states.size());
        for (auto& [key, tree] : states) {
            StateSpec state;
            state.reward = key[0];
            state.transitions.assign(key.begin() + 1, key.end());
            ap.problem.state_sets[k].push_back(std::move(state));
            ap.state_trees[k].push_back(std::move(tree));
        }
    }

    validate_problem(ap.problem);
    return ap;
}

AifvCode code_from_chain(const AifvProblem& ap, const ChainSelection& selection) {
    validate_selection(ap.problem, selection);
    AifvCode code;
    code.symbols = ap.source.symbols;
    code.trees.reserve(selection.size());
    for (std::size_t k = 0; k < selection.size(); ++k)
        code.trees.push_back(ap.state_trees[k][selection[k]]);
    return code;
}

}  // namespace mcp
