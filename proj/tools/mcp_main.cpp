#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mcp/aifv.hpp"
#include "mcp/errors.hpp"
#include "mcp/geometry.hpp"
#include "mcp/io.hpp"
#include "mcp/oracle.hpp"
#include "mcp/problem.hpp"
#include "mcp/slice.hpp"
#include "mcp/solver.hpp"

namespace {

using namespace mcp;

std::string join_chain(const ChainSelection& chain) {
    std::string out = "[";
    for (size_t i = 0; i < chain.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(chain[i]);
    }
    return out + "]";
}

std::string join_rats(const std::vector<Rat>& v) {
    std::string out = "[";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += to_string(v[i]);
    }
    return out + "]";
}

std::vector<std::string> split_ws(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

std::vector<std::string> split_commas(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

// Empty path = stdout.
void emit(const std::string& path, const std::string& text) {
    if (path.empty())
        std::cout << text;
    else
        write_text_file(path, text);
}

std::string solution_line(const ChainSelection& chain, const LiftedPoint& point) {
    return "chain=" + join_chain(chain) + " x=" + join_rats(point.x) +
           " cost=" + to_string(point.y) + "\n";
}

struct SolveMcmcOpts {
    std::string problem_path;
    std::string algo = "iterative";
    std::string start;
    std::string trace_path;
};

int run_solve_mcmc(const SolveMcmcOpts& opt) {
    ProblemSpec ps = load_problem(opt.problem_path);
    if (opt.algo == "brute") {
        if (!opt.start.empty()) throw InputError("--start requires --algo iterative");
        if (!opt.trace_path.empty()) throw InputError("--trace requires --algo iterative");
        OracleReport rep = brute_force_min(ps);
        LiftedPoint point = multi_typed_intersection(resolve_chain(ps, rep.best_chain));
        if (point.y != rep.best_cost)
            throw InternalError("brute-force cost and intersection height disagree");
        std::cout << solution_line(rep.best_chain, point);
        return 0;
    }
    SolveResult res;
    if (opt.start.empty()) {
        res = solve_iterative(ps);
    } else {
        ChainSelection sel;
        for (const std::string& tok : split_commas(opt.start)) {
            try {
                sel.push_back(std::stoi(tok));
            } catch (const std::exception&) {
                throw InputError("--start must be a comma-separated index list");
            }
        }
        validate_selection(ps, sel);
        res = solve_iterative(ps, sel);
    }
    if (!opt.trace_path.empty()) write_text_file(opt.trace_path, trace_to_csv(res.trace));
    std::cout << solution_line(res.chain, res.point);
    return 0;
}

struct SolveAifvOpts {
    std::string source_path;
    int m = 2;
    std::string algo = "iterative";
    int max_nodes = -1;
    int b_prime = -1;
    std::string out_path;
    std::string trace_path;
};

int run_solve_aifv(const SolveAifvOpts& opt) {
    if (opt.algo == "slice" && opt.m != 3) throw InputError("slice requires m=3");
    SourceDistribution src = load_source(opt.source_path);
    const int cap = opt.max_nodes < 0 ? default_max_nodes(src.num_symbols(), opt.m) : opt.max_nodes;
    AifvProblem ap = aifv_problem(src, opt.m, cap);

    ChainSelection chain;
    LiftedPoint point;
    if (opt.algo == "iterative") {
        SolveResult res = solve_iterative(ap.problem);
        if (!opt.trace_path.empty()) write_text_file(opt.trace_path, trace_to_csv(res.trace));
        chain = res.chain;
        point = res.point;
    } else if (opt.algo == "brute") {
        if (!opt.trace_path.empty())
            throw InputError("--trace requires --algo iterative or slice");
        OracleReport rep = brute_force_min(ap.problem);
        chain = rep.best_chain;
        point = multi_typed_intersection(resolve_chain(ap.problem, chain));
        if (point.y != rep.best_cost)
            throw InternalError("brute-force cost and intersection height disagree");
    } else {
        if (src.num_symbols() < 7)
            std::cerr << "warning: the boundary-sign property is only guaranteed for n >= 7 "
                         "symbols; the search still checks its endpoint preconditions\n";
        const unsigned b = src.b < 1 ? 1 : src.b;
        PrecisionConfig cfg = opt.b_prime < 0
                                  ? PrecisionConfig::from_bits(b)
                                  : PrecisionConfig::with_b_prime(b, static_cast<unsigned>(opt.b_prime));
        SliceSearchReport report;
        SolveResult res = solve_slice_search(ap.problem, cfg, &report);
        if (!opt.trace_path.empty()) write_text_file(opt.trace_path, slice_trace_to_csv(report));
        chain = res.chain;
        point = res.point;
    }
    if (!opt.out_path.empty()) write_text_file(opt.out_path, code_to_json(code_from_chain(ap, chain)));
    std::cout << solution_line(chain, point);
    return 0;
}

struct CodecOpts {
    std::string code_path;
    std::string in_text;
    std::string input_file;
    std::string out_path;
    long long count = -1;
    bool binary = false;
};

std::string codec_input(const CodecOpts& opt) {
    const bool has_in = !opt.in_text.empty();
    const bool has_file = !opt.input_file.empty();
    if (has_in == has_file)
        throw InputError("provide exactly one of --in or --input-file");
    return has_in ? opt.in_text : read_text_file(opt.input_file);
}

int run_encode(const CodecOpts& opt) {
    AifvCode code = load_code(opt.code_path);
    std::map<std::string, int> index;
    for (int i = 0; i < code.num_symbols(); ++i) index[code.symbols[i]] = i;
    std::vector<int> symbols;
    for (const std::string& name : split_ws(codec_input(opt))) {
        auto it = index.find(name);
        if (it == index.end()) throw InputError("unknown symbol \"" + name + "\"");
        symbols.push_back(it->second);
    }
    std::string bits = encode(code, symbols);
    if (opt.binary) {
        if (opt.out_path.empty()) throw InputError("--binary requires --out");
        write_text_file(opt.out_path, pack_bits(bits, symbols.size()));
        return 0;
    }
    emit(opt.out_path, bits + "\n");
    return 0;
}

int run_decode(const CodecOpts& opt) {
    AifvCode code = load_code(opt.code_path);
    std::string bits;
    unsigned long long count = 0;
    bool padded = false;
    if (opt.binary) {
        if (opt.input_file.empty() || !opt.in_text.empty())
            throw InputError("--binary requires the container via --input-file");
        auto [unpacked, n] = unpack_bits(read_text_file(opt.input_file));
        if (opt.count >= 0 && static_cast<unsigned long long>(opt.count) != n)
            throw InputError("--count disagrees with the container's symbol count");
        bits = std::move(unpacked);
        count = n;
        padded = true;
    } else {
        for (const std::string& tok : split_ws(codec_input(opt))) bits += tok;
        if (opt.count < 0) throw InputError("decode needs --count N (or --binary)");
        count = static_cast<unsigned long long>(opt.count);
    }
    std::size_t consumed = 0;
    std::vector<int> symbols = decode(code, bits, count, &consumed);
    const std::size_t leftover = bits.size() - consumed;
    if (padded) {
        if (leftover >= 8)
            throw InputError(std::to_string(leftover) + " bits left undecoded");
        for (std::size_t i = consumed; i < bits.size(); ++i)
            if (bits[i] != '0') throw InputError("nonzero padding after the decoded bits");
    } else if (leftover != 0) {
        throw InputError(std::to_string(leftover) + " bits left undecoded");
    }
    std::string out;
    for (size_t i = 0; i < symbols.size(); ++i) {
        if (i) out += " ";
        out += code.symbols.at(symbols[i]);
    }
    emit(opt.out_path, out + "\n");
    return 0;
}

struct EnvelopeOpts {
    std::string problem_path;
    int grid = 10;
    std::string box;
    std::string out_path;
};

int run_envelope(const EnvelopeOpts& opt) {
    ProblemSpec ps = load_problem(opt.problem_path);
    const int dims = ps.num_types() - 1;
    std::vector<Rat> lo(dims, Rat(0)), hi(dims);
    for (int d = 0; d < dims; ++d) hi[d] = 1;
    if (!opt.box.empty()) {
        std::vector<std::string> parts = split_commas(opt.box);
        if (static_cast<int>(parts.size()) != 2 * dims)
            throw InputError("bad box: expected " + std::to_string(2 * dims) +
                             " comma-separated bounds");
        for (int d = 0; d < dims; ++d) {
            lo[d] = parse_rat(parts[2 * d]);
            hi[d] = parse_rat(parts[2 * d + 1]);
        }
    }
    emit(opt.out_path, envelope_csv(ps, lo, hi, opt.grid));
    return 0;
}

struct VerifyOpts {
    std::string problem_path;
    std::string source_path;
    std::string code_path;
    int m = 3;
    int max_nodes = -1;
    std::string suite = "all";
    unsigned long long seed = 1;
    int count = 10000;
    int samples = 20;
    int max_len = 6;
    std::string report_path;
};

struct SuiteResult {
    std::string name;
    std::string status;  // "pass", "skip", "fail"
    std::string detail;
};

StateSpec random_state(int m, std::mt19937_64& rng) {
    auto uni = [&](long lo, long hi) {
        return std::uniform_int_distribution<long>(lo, hi)(rng);
    };
    StateSpec s;
    std::vector<long> a(m);
    long den = 0;
    a[0] = uni(1, 8);
    for (int j = 1; j < m; ++j) a[j] = uni(0, 8);
    for (int j = 0; j < m; ++j) den += a[j];
    for (int j = 0; j < m; ++j) s.transitions.push_back(rat(a[j], den));
    s.reward = rat(uni(0, 32), uni(1, 4));
    return s;
}

SuiteResult suite_lemma4(const std::optional<ProblemSpec>& prob, int m_default, int trials,
                         std::mt19937_64& rng) {
    auto uni = [&](long lo, long hi) {
        return std::uniform_int_distribution<long>(lo, hi)(rng);
    };
    const int m = prob ? prob->num_types() : std::max(2, m_default);
    for (int t = 0; t < trials; ++t) {
        const int i = static_cast<int>(uni(0, m - 1));
        StateSpec s;
        if (prob && t % 2 == 0) {
            const auto& set = prob->state_sets[i];
            s = set[static_cast<size_t>(uni(0, static_cast<long>(set.size()) - 1))];
        } else {
            s = random_state(m, rng);
        }
        PointX u(m - 1), w(m - 1);
        for (int j = 0; j < m - 1; ++j) u[j] = rat(uni(-24, 24), uni(1, 8));
        if (i == 0) {
            for (int j = 0; j < m - 1; ++j) w[j] = -rat(uni(0, 6), uni(1, 4));
        } else {
            w[i - 1] = rat(uni(1, 24), uni(1, 4));
            for (int j = 0; j < m - 1; ++j)
                if (j != i - 1) w[j] = w[i - 1] - rat(uni(0, 24), uni(1, 4));
        }
        PointX v(m - 1);
        for (int j = 0; j < m - 1; ++j) v[j] = u[j] + w[j];
        const Rat d = eval_f(i, v, s) - eval_f(i, u, s);
        const bool ok = (i == 0) ? d <= 0 : d < 0;
        if (!ok) {
            std::ostringstream detail;
            detail << "f_" << i << " failed to descend along its cone: u=" << join_rats(u)
                   << " v=" << join_rats(v) << " reward=" << to_string(s.reward)
                   << " q=" << join_rats(s.transitions) << " difference=" << to_string(d);
            return {"lemma4", "fail", detail.str()};
        }
    }
    return {"lemma4", "pass", std::to_string(trials) + " random cone-descent checks"};
}

SuiteResult suite_cones(const std::optional<ProblemSpec>& prob, int m_default, int trials,
                        std::mt19937_64& rng) {
    auto uni = [&](long lo, long hi) {
        return std::uniform_int_distribution<long>(lo, hi)(rng);
    };
    const int m = prob ? prob->num_types() : std::max(2, m_default);
    for (int t = 0; t < trials; ++t) {
        std::vector<Rat> u(m - 1);
        for (int j = 0; j < m - 1; ++j) {
            u[j] = rat(uni(-6, 6), uni(1, 4));
            if (uni(0, 3) == 0) u[j] = 0;
        }
        if (m - 1 >= 2 && uni(0, 3) == 0)
            u[static_cast<size_t>(uni(0, m - 2))] = u[static_cast<size_t>(uni(0, m - 2))];
        const int label = classify_cone(u);
        int ref = 0;
        bool positive = false;
        Rat best;
        for (int j = 0; j < m - 1; ++j) {
            if (u[j] > 0 && (!positive || u[j] > best)) {
                positive = true;
                best = u[j];
                ref = j + 1;
            }
        }
        if (label != ref) {
            std::ostringstream detail;
            detail << "classify_cone(" << join_rats(u) << ") = " << label << ", expected " << ref;
            return {"cones", "fail", detail.str()};
        }
    }
    return {"cones", "pass", std::to_string(trials) + " classifications consistent"};
}

SuiteResult suite_boundary(const std::optional<ProblemSpec>& prob, int samples, int n_symbols) {
    if (!prob || prob->num_types() != 3)
        return {"boundary", "skip", "needs an m=3 problem (pass --problem or --source with --m 3)"};
    BoundaryReport rep = boundary_sign_check(*prob, samples, n_symbols);
    if (rep.skipped) return {"boundary", "skip", rep.note};
    if (!rep.violations.empty()) {
        const BoundaryViolation& v = rep.violations.front();
        std::ostringstream detail;
        detail << rep.violations.size() << " violation(s); first at x=" << join_rats(v.x)
               << " on the x_" << v.k << "=" << v.side
               << " edge, difference=" << to_string(v.difference);
        return {"boundary", "fail", detail.str()};
    }
    return {"boundary", "pass",
            std::to_string(rep.samples) + " samples per edge on 4 edges, no violations"};
}

SuiteResult suite_roundtrip(const std::optional<AifvCode>& code, int max_len) {
    if (!code) return {"roundtrip", "skip", "no code available (pass --code or --source)"};
    RoundtripReport rep = exhaustive_roundtrip(*code, max_len);
    if (!rep.ok) {
        std::string seq;
        for (size_t i = 0; i < rep.counterexample.size(); ++i) {
            if (i) seq += " ";
            const int s = rep.counterexample[i];
            seq += (s >= 0 && s < code->num_symbols()) ? code->symbols[s] : std::to_string(s);
        }
        return {"roundtrip", "fail", "counterexample \"" + seq + "\": " + rep.detail};
    }
    return {"roundtrip", "pass",
            std::to_string(rep.sequences_checked) + " sequences up to length " +
                std::to_string(max_len)};
}

int run_verify(const VerifyOpts& opt) {
    std::optional<ProblemSpec> prob;
    std::optional<SourceDistribution> src;
    std::optional<AifvProblem> ap;
    std::optional<AifvCode> code;

    if (!opt.problem_path.empty()) prob = load_problem(opt.problem_path);
    if (!opt.source_path.empty()) {
        src = load_source(opt.source_path);
        const int cap =
            opt.max_nodes < 0 ? default_max_nodes(src->num_symbols(), opt.m) : opt.max_nodes;
        ap = aifv_problem(*src, opt.m, cap);
        if (!prob) prob = ap->problem;
    }
    if (!opt.code_path.empty())
        code = load_code(opt.code_path);
    else if (ap)
        code = code_from_chain(*ap, solve_iterative(ap->problem).chain);

    const int n_symbols = src ? src->num_symbols() : -1;
    std::mt19937_64 rng(opt.seed);
    auto selected = [&](const char* name) { return opt.suite == "all" || opt.suite == name; };

    std::vector<SuiteResult> results;
    if (selected("lemma4")) results.push_back(suite_lemma4(prob, opt.m, opt.count, rng));
    if (selected("cones")) results.push_back(suite_cones(prob, opt.m, opt.count, rng));
    if (selected("boundary")) results.push_back(suite_boundary(prob, opt.samples, n_symbols));
    if (selected("roundtrip")) results.push_back(suite_roundtrip(code, opt.max_len));

    bool failed = false;
    for (const SuiteResult& r : results) {
        std::string tag = r.status == "pass" ? "[PASS]" : (r.status == "skip" ? "[SKIP]" : "[FAIL]");
        std::cout << tag << " " << r.name << ": " << r.detail << "\n";
        failed = failed || r.status == "fail";
    }
    if (!opt.report_path.empty()) {
        nlohmann::json j;
        j["seed"] = opt.seed;
        nlohmann::json suites = nlohmann::json::array();
        for (const SuiteResult& r : results)
            suites.push_back({{"name", r.name}, {"status", r.status}, {"detail", r.detail}});
        j["suites"] = suites;
        write_text_file(opt.report_path, j.dump(2) + "\n");
    }
    return failed ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"minimum-cost Markov chains and optimal AIFV-m codes"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "1.0.0");

    SolveMcmcOpts mcmc;
    CLI::App* solve_mcmc = app.add_subcommand("solve-mcmc", "solve a Markov chain problem file");
    solve_mcmc->add_option("--problem", mcmc.problem_path, "problem JSON file")->required();
    solve_mcmc->add_option("--algo", mcmc.algo, "iterative or brute")
        ->check(CLI::IsMember({"iterative", "brute"}));
    solve_mcmc->add_option("--start", mcmc.start, "starting chain indices i0,i1,...");
    solve_mcmc->add_option("--trace", mcmc.trace_path, "write the iteration trace CSV here");

    SolveAifvOpts aifv;
    CLI::App* solve_aifv = app.add_subcommand("solve-aifv", "construct an optimal AIFV-m code");
    solve_aifv->add_option("--source", aifv.source_path, "source JSON file")->required();
    solve_aifv->add_option("--m", aifv.m, "number of code trees (m >= 2)");
    solve_aifv->add_option("--algo", aifv.algo, "iterative, slice, or brute")
        ->check(CLI::IsMember({"iterative", "slice", "brute"}));
    solve_aifv->add_option("--max-nodes", aifv.max_nodes, "tree enumeration node cap (default 3n+m)");
    solve_aifv->add_option("--b-prime", aifv.b_prime, "working precision override (default 14b+18)");
    solve_aifv->add_option("--out", aifv.out_path, "write the optimal code JSON here");
    solve_aifv->add_option("--trace", aifv.trace_path, "write the solver trace CSV here");

    CodecOpts enc;
    CLI::App* encode_cmd = app.add_subcommand("encode", "encode symbols to bits");
    encode_cmd->add_option("--code", enc.code_path, "code JSON file")->required();
    encode_cmd->add_option("--in", enc.in_text, "whitespace-separated symbols");
    encode_cmd->add_option("--input-file", enc.input_file, "read symbols from this file");
    encode_cmd->add_option("--out", enc.out_path, "output file (default stdout)");
    encode_cmd->add_flag("--binary", enc.binary, "write a packed binary container (needs --out)");

    CodecOpts dec;
    CLI::App* decode_cmd = app.add_subcommand("decode", "decode bits to symbols");
    decode_cmd->add_option("--code", dec.code_path, "code JSON file")->required();
    decode_cmd->add_option("--in", dec.in_text, "ASCII bit string");
    decode_cmd->add_option("--input-file", dec.input_file, "read bits (or a container) from this file");
    decode_cmd->add_option("--count", dec.count, "number of symbols to decode");
    decode_cmd->add_option("--out", dec.out_path, "output file (default stdout)");
    decode_cmd->add_flag("--binary", dec.binary, "input is a packed binary container");

    EnvelopeOpts env;
    CLI::App* envelope_cmd = app.add_subcommand("envelope", "tabulate g_0..g_{m-1} and h on a grid");
    envelope_cmd->add_option("--problem", env.problem_path, "problem JSON file")->required();
    envelope_cmd->add_option("--grid", env.grid, "grid steps per axis (G+1 samples)");
    envelope_cmd->add_option("--box", env.box, "bounds lo1,hi1[,lo2,hi2] (default unit box)");
    envelope_cmd->add_option("--out", env.out_path, "output CSV file (default stdout)");

    VerifyOpts ver;
    CLI::App* verify_cmd = app.add_subcommand("verify", "run randomized property suites");
    verify_cmd->add_option("--problem", ver.problem_path, "problem JSON file");
    verify_cmd->add_option("--source", ver.source_path, "source JSON file");
    verify_cmd->add_option("--code", ver.code_path, "code JSON file");
    verify_cmd->add_option("--m", ver.m, "tree count used with --source (default 3)");
    verify_cmd->add_option("--max-nodes", ver.max_nodes, "node cap used with --source");
    verify_cmd->add_option("--suite", ver.suite, "lemma4, cones, boundary, roundtrip, or all")
        ->check(CLI::IsMember({"lemma4", "cones", "boundary", "roundtrip", "all"}));
    verify_cmd->add_option("--seed", ver.seed, "RNG seed for the randomized suites");
    verify_cmd->add_option("--count", ver.count, "trials for lemma4/cones");
    verify_cmd->add_option("--samples", ver.samples, "boundary samples per edge");
    verify_cmd->add_option("--max-len", ver.max_len, "roundtrip sequence length cap");
    verify_cmd->add_option("--report", ver.report_path, "write a JSON report here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (solve_mcmc->parsed()) return run_solve_mcmc(mcmc);
        if (solve_aifv->parsed()) return run_solve_aifv(aifv);
        if (encode_cmd->parsed()) return run_encode(enc);
        if (decode_cmd->parsed()) return run_decode(dec);
        if (envelope_cmd->parsed()) return run_envelope(env);
        if (verify_cmd->parsed()) return run_verify(ver);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
