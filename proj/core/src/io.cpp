#include "mcp/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "mcp/errors.hpp"
#include "mcp/geometry.hpp"

namespace mcp {

namespace {

using nlohmann::json;

json parse_document(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("invalid JSON: ") + e.what());
    }
}

// dump(2) keeps object keys sorted, so this is the canonical byte form.
std::string render(const json& j) { return j.dump(2) + "\n"; }

const json& require(const json& j, const char* key, const char* where) {
    if (!j.is_object() || !j.contains(key))
        throw InputError(std::string(where) + ": missing field \"" + key + "\"");
    return j.at(key);
}

Rat fraction_field(const json& j, const char* where) {
    if (!j.is_string())
        throw InputError(std::string(where) +
                         " must be an exact fraction string, not a JSON number");
    return parse_rat(j.get<std::string>());
}

long long int_field(const json& j, const char* where) {
    if (!j.is_number_integer())
        throw InputError(std::string(where) + " must be an integer");
    return j.get<long long>();
}

std::string string_field(const json& j, const char* where) {
    if (!j.is_string()) throw InputError(std::string(where) + " must be a string");
    return j.get<std::string>();
}

int parse_node(const json& j, AifvTree& tree, const std::map<std::string, int>& symbol_index) {
    const int idx = static_cast<int>(tree.nodes.size());
    tree.nodes.emplace_back();
    const std::string kind = string_field(require(j, "kind", "tree node"), "node kind");
    if (kind == "complete") {
        tree.nodes[idx].kind = NodeKind::Complete;
        int zero = parse_node(require(j, "zero", "complete node"), tree, symbol_index);
        tree.nodes[idx].zero_child = zero;
        int one = parse_node(require(j, "one", "complete node"), tree, symbol_index);
        tree.nodes[idx].one_child = one;
    } else if (kind == "intermediate0") {
        if (j.contains("one")) throw InputError("intermediate0 node cannot have a 1-child");
        tree.nodes[idx].kind = NodeKind::Intermediate0;
        tree.nodes[idx].zero_child = parse_node(require(j, "zero", "intermediate0 node"), tree,
                                                symbol_index);
    } else if (kind == "intermediate1") {
        if (j.contains("zero")) throw InputError("intermediate1 node cannot have a 0-child");
        tree.nodes[idx].kind = NodeKind::Intermediate1;
        tree.nodes[idx].one_child = parse_node(require(j, "one", "intermediate1 node"), tree,
                                               symbol_index);
    } else if (kind == "master") {
        if (j.contains("one")) throw InputError("master node cannot have a 1-child");
        tree.nodes[idx].kind = NodeKind::Master;
        long long degree = int_field(require(j, "degree", "master node"), "master degree");
        if (degree < 0) throw InputError("master degree must be nonnegative");
        tree.nodes[idx].degree = static_cast<int>(degree);
        const std::string name = string_field(require(j, "symbol", "master node"), "master symbol");
        auto it = symbol_index.find(name);
        if (it == symbol_index.end())
            throw InputError("master symbol \"" + name + "\" is not in the alphabet");
        tree.nodes[idx].symbol = it->second;
        if (degree >= 1) {
            tree.nodes[idx].zero_child = parse_node(require(j, "zero", "master node"), tree,
                                                    symbol_index);
        } else if (j.contains("zero")) {
            throw InputError("degree-0 master is a leaf and cannot have a 0-child");
        }
    } else {
        throw InputError("unknown node kind \"" + kind + "\"");
    }
    return idx;
}

json node_json(const AifvTree& tree, int idx, const std::vector<std::string>& symbols) {
    const AifvNode& node = tree.nodes.at(idx);
    json j;
    switch (node.kind) {
        case NodeKind::Complete:
            j["kind"] = "complete";
            j["zero"] = node_json(tree, node.zero_child, symbols);
            j["one"] = node_json(tree, node.one_child, symbols);
            break;
        case NodeKind::Intermediate0:
            j["kind"] = "intermediate0";
            j["zero"] = node_json(tree, node.zero_child, symbols);
            break;
        case NodeKind::Intermediate1:
            j["kind"] = "intermediate1";
            j["one"] = node_json(tree, node.one_child, symbols);
            break;
        case NodeKind::Master:
            j["kind"] = "master";
            j["degree"] = node.degree;
            if (node.symbol < 0 || node.symbol >= static_cast<int>(symbols.size()))
                throw InputError("master symbol index out of range");
            j["symbol"] = symbols[node.symbol];
            if (node.degree >= 1) j["zero"] = node_json(tree, node.zero_child, symbols);
            break;
    }
    return j;
}

std::string approx(const Rat& q) { return "≈" + to_decimal(q, 6); }

}  // namespace

ProblemSpec parse_problem_json(const std::string& text) {
    json j = parse_document(text);
    const long long m = int_field(require(j, "m", "problem"), "problem field \"m\"");
    const json& types = require(j, "types", "problem");
    if (!types.is_array() || static_cast<long long>(types.size()) != m)
        throw InputError("problem field \"types\" must be an array of m state sets");
    ProblemSpec ps;
    for (const json& set : types) {
        if (!set.is_array()) throw InputError("each state set must be an array");
        std::vector<StateSpec> states;
        for (const json& st : set) {
            StateSpec s;
            s.reward = fraction_field(require(st, "reward", "state"), "state reward");
            const json& q = require(st, "q", "state");
            if (!q.is_array()) throw InputError("state field \"q\" must be an array");
            for (const json& el : q) s.transitions.push_back(fraction_field(el, "transition"));
            states.push_back(std::move(s));
        }
        ps.state_sets.push_back(std::move(states));
    }
    validate_problem(ps);
    return ps;
}

std::string problem_to_json(const ProblemSpec& problem) {
    json j;
    j["m"] = problem.num_types();
    json types = json::array();
    for (const auto& set : problem.state_sets) {
        json states = json::array();
        for (const StateSpec& s : set) {
            json st;
            st["reward"] = to_string(s.reward);
            json q = json::array();
            for (const Rat& t : s.transitions) q.push_back(to_string(t));
            st["q"] = q;
            states.push_back(st);
        }
        types.push_back(states);
    }
    j["types"] = types;
    return render(j);
}

SourceDistribution parse_source_json(const std::string& text) {
    json j = parse_document(text);
    const long long b = int_field(require(j, "b", "source"), "source field \"b\"");
    if (b < 0) throw InputError("source field \"b\" must be nonnegative");
    SourceDistribution src;
    src.b = static_cast<unsigned>(b);
    const json& symbols = require(j, "symbols", "source");
    const json& probs = require(j, "probs", "source");
    if (!symbols.is_array() || !probs.is_array())
        throw InputError("source fields \"symbols\" and \"probs\" must be arrays");
    for (const json& s : symbols) src.symbols.push_back(string_field(s, "symbol"));
    for (const json& p : probs) src.probs.push_back(fraction_field(p, "probability"));
    validate_source(src);
    return src;
}

std::string source_to_json(const SourceDistribution& source) {
    json j;
    j["b"] = source.b;
    j["symbols"] = source.symbols;
    json probs = json::array();
    for (const Rat& p : source.probs) probs.push_back(to_string(p));
    j["probs"] = probs;
    return render(j);
}

AifvCode parse_code_json(const std::string& text) {
    json j = parse_document(text);
    const long long m = int_field(require(j, "m", "code"), "code field \"m\"");
    AifvCode code;
    const json& symbols = require(j, "symbols", "code");
    if (!symbols.is_array()) throw InputError("code field \"symbols\" must be an array");
    std::map<std::string, int> symbol_index;
    for (const json& s : symbols) {
        std::string name = string_field(s, "symbol");
        if (!symbol_index.emplace(name, code.num_symbols()).second)
            throw InputError("duplicate symbol \"" + name + "\" in the alphabet");
        code.symbols.push_back(std::move(name));
    }
    const json& trees = require(j, "trees", "code");
    if (!trees.is_array() || static_cast<long long>(trees.size()) != m)
        throw InputError("code field \"trees\" must be an array of m trees");
    for (const json& t : trees) {
        AifvTree tree;
        parse_node(t, tree, symbol_index);
        code.trees.push_back(std::move(tree));
    }
    return code;
}

std::string code_to_json(const AifvCode& code) {
    json j;
    j["m"] = code.num_types();
    j["symbols"] = code.symbols;
    json trees = json::array();
    for (const AifvTree& tree : code.trees) {
        if (tree.nodes.empty()) throw InputError("cannot serialize an empty tree");
        trees.push_back(node_json(tree, 0, code.symbols));
    }
    j["trees"] = trees;
    return render(j);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot open " + path + " for writing");
    out << text;
    if (!out) throw InputError("failed writing " + path);
}

ProblemSpec load_problem(const std::string& path) { return parse_problem_json(read_text_file(path)); }

SourceDistribution load_source(const std::string& path) {
    return parse_source_json(read_text_file(path));
}

AifvCode load_code(const std::string& path) { return parse_code_json(read_text_file(path)); }

std::string pack_bits(const std::string& bits, unsigned long long num_symbols) {
    std::string out;
    out.reserve(8 + (bits.size() + 7) / 8);
    for (int i = 7; i >= 0; --i)
        out.push_back(static_cast<char>((num_symbols >> (8 * i)) & 0xFF));
    unsigned byte = 0;
    int filled = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') throw InputError("bit strings may only contain '0' and '1'");
        byte = (byte << 1) | static_cast<unsigned>(c - '0');
        if (++filled == 8) {
            out.push_back(static_cast<char>(byte));
            byte = 0;
            filled = 0;
        }
    }
    if (filled > 0) out.push_back(static_cast<char>(byte << (8 - filled)));
    return out;
}

std::pair<std::string, unsigned long long> unpack_bits(const std::string& container) {
    if (container.size() < 8)
        throw InputError("binary container too short: missing the 8-byte symbol count");
    unsigned long long count = 0;
    for (int i = 0; i < 8; ++i)
        count = (count << 8) | static_cast<unsigned char>(container[i]);
    std::string bits;
    bits.reserve((container.size() - 8) * 8);
    for (size_t i = 8; i < container.size(); ++i) {
        unsigned char byte = static_cast<unsigned char>(container[i]);
        for (int k = 7; k >= 0; --k) bits.push_back(((byte >> k) & 1) ? '1' : '0');
    }
    return {std::move(bits), count};
}

std::string trace_to_csv(const IterationTrace& trace) {
    std::ostringstream out;
    out << "step,c";
    const size_t dims = trace.steps.empty() ? 0 : trace.steps.front().p.size();
    for (size_t d = 1; d <= dims; ++d) out << ",p" << d;
    out << "\n";
    for (size_t i = 0; i < trace.steps.size(); ++i) {
        out << i << "," << to_string(trace.steps[i].c);
        for (const Rat& coord : trace.steps[i].p) out << "," << to_string(coord);
        out << "\n";
    }
    return out.str();
}

std::string slice_trace_to_csv(const SliceSearchReport& report) {
    std::ostringstream out;
    out << "iteration,l,r,e0,e1\n";
    for (size_t i = 0; i < report.iterations.size(); ++i) {
        const SliceIteration& it = report.iterations[i];
        out << (i + 1) << "," << to_string(it.l) << "," << to_string(it.r) << ","
            << to_string(it.e0) << "," << to_string(it.e1) << "\n";
    }
    return out.str();
}

std::string envelope_csv(const ProblemSpec& problem, const std::vector<Rat>& lo,
                         const std::vector<Rat>& hi, int grid) {
    validate_problem(problem);
    const int m = problem.num_types();
    if (m > 3) throw InputError("tabular envelope limited to m <= 3");
    const int dims = m - 1;
    if (static_cast<int>(lo.size()) != dims || static_cast<int>(hi.size()) != dims)
        throw InputError("bad box: expected " + std::to_string(2 * dims) + " bounds");
    for (int d = 0; d < dims; ++d)
        if (lo[d] > hi[d]) throw InputError("bad box: lo > hi");
    if (grid < 0) throw InputError("grid must be nonnegative");

    std::vector<std::vector<Rat>> axes(dims);
    for (int d = 0; d < dims; ++d) {
        if (grid == 0) {
            axes[d].push_back(lo[d]);
        } else {
            for (int i = 0; i <= grid; ++i)
                axes[d].push_back(lo[d] + (hi[d] - lo[d]) * rat(i, grid));
        }
    }

    std::ostringstream out;
    for (int d = 1; d <= dims; ++d) out << "x" << d << ",";
    for (int k = 0; k < m; ++k) out << "g" << k << ",";
    out << "h";
    for (int d = 1; d <= dims; ++d) out << ",approx_x" << d;
    for (int k = 0; k < m; ++k) out << ",approx_g" << k;
    out << ",approx_h\n";

    std::vector<int> idx(dims, 0);
    while (true) {
        PointX x(dims);
        for (int d = 0; d < dims; ++d) x[d] = axes[d][idx[d]];
        std::vector<Rat> g(m);
        Rat h;
        for (int k = 0; k < m; ++k) {
            g[k] = eval_envelope(k, x, problem).value;
            if (k == 0 || g[k] < h) h = g[k];
        }
        for (int d = 0; d < dims; ++d) out << to_string(x[d]) << ",";
        for (int k = 0; k < m; ++k) out << to_string(g[k]) << ",";
        out << to_string(h);
        for (int d = 0; d < dims; ++d) out << "," << approx(x[d]);
        for (int k = 0; k < m; ++k) out << "," << approx(g[k]);
        out << "," << approx(h) << "\n";

        int d = dims - 1;
        while (d >= 0 && idx[d] + 1 == static_cast<int>(axes[d].size())) {
            idx[d] = 0;
            --d;
        }
        if (d < 0) break;
        ++idx[d];
    }
    return out.str();
}

}  // namespace mcp
