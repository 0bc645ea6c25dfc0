#include <string>
#include <vector>

#include "mcp/aifv.hpp"
#include "mcp/errors.hpp"

namespace mcp {

namespace {

struct MasterWord {
    int symbol;
    std::string word;
    int degree;
};

// Codeword (root path) and degree of every master in the tree.
std::vector<MasterWord> master_codewords(const AifvTree& tree) {
    std::vector<MasterWord> words;
    auto walk = [&](auto&& self, int i, std::string& path) -> void {
        const AifvNode& node = tree.nodes[i];
        if (node.kind == NodeKind::Master) words.push_back({node.symbol, path, node.degree});
        if (node.zero_child != -1) {
            path.push_back('0');
            self(self, node.zero_child, path);
            path.pop_back();
        }
        if (node.one_child != -1) {
            path.push_back('1');
            self(self, node.one_child, path);
            path.pop_back();
        }
    };
    std::string path;
    walk(walk, 0, path);
    return words;
}

}  // namespace

std::string encode(const AifvCode& code, const std::vector<int>& symbols) {
    const int m = code.num_types();
    const int n = code.num_symbols();
    if (m < 1) throw InputError("encode: code has no trees");

    // codeword[k][s] and degree[k][s] for tree k, symbol s.
    std::vector<std::vector<std::string>> codeword(m, std::vector<std::string>(n));
    std::vector<std::vector<int>> degree(m, std::vector<int>(n, -1));
    for (int k = 0; k < m; ++k)
        for (const MasterWord& mw : master_codewords(code.trees[k])) {
            if (mw.symbol < 0 || mw.symbol >= n)
                throw InputError("encode: master with out-of-range symbol");
            codeword[k][mw.symbol] = mw.word;
            degree[k][mw.symbol] = mw.degree;
        }

    std::string bits;
    int tree = 0;
    for (int sym : symbols) {
        if (sym < 0 || sym >= n)
            throw InputError("encode: unknown symbol index " + std::to_string(sym));
        if (degree[tree][sym] < 0)
            throw InputError("encode: symbol " + std::to_string(sym) + " has no master in tree " +
                             std::to_string(tree));
        bits += codeword[tree][sym];
        tree = degree[tree][sym];
        if (tree >= m)
            throw InputError("encode: master degree " + std::to_string(tree) +
                             " exceeds the code's tree count");
    }
    return bits;
}

std::vector<int> decode(const AifvCode& code, const std::string& bits, std::size_t num_symbols,
                        std::size_t* consumed) {
    const int m = code.num_types();
    if (m < 1) throw InputError("decode: code has no trees");
    for (char c : bits)
        if (c != '0' && c != '1') throw InputError("decode: bit string contains non-bit characters");

    std::vector<int> out;
    out.reserve(num_symbols);
    std::size_t pos = 0;
    int tree = 0;
    while (out.size() < num_symbols) {
        const AifvTree& t = code.trees[tree];
        int node = 0;
        int last_master = -1;
        std::size_t last_master_pos = pos;
        std::size_t walk = pos;
        for (;;) {
            if (t.nodes[node].kind == NodeKind::Master) {
                last_master = node;
                last_master_pos = walk;
            }
            if (walk >= bits.size()) break;
            const int next =
                bits[walk] == '0' ? t.nodes[node].zero_child : t.nodes[node].one_child;
            if (next == -1) break;
            node = next;
            ++walk;
        }
        if (last_master == -1)
            throw DecodeError("decode: no master reachable at bit offset " + std::to_string(pos) +
                              (walk >= bits.size() ? " (bits exhausted)" : ""));
        pos = last_master_pos;
        out.push_back(t.nodes[last_master].symbol);
        const int next_tree = t.nodes[last_master].degree;
        if (next_tree < 0 || next_tree >= m)
            throw InputError("decode: master degree " + std::to_string(next_tree) +
                             " exceeds the code's tree count");
        tree = next_tree;
    }
    if (consumed) *consumed = pos;
    return out;
}

}  // namespace mcp
