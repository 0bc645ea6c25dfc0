#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mcp/aifv.hpp"
#include "mcp/problem.hpp"
#include "mcp/slice.hpp"
#include "mcp/solver.hpp"

namespace mcp {

// JSON documents carry every exact quantity as a fraction string ("3/5",
// "7", "3/2^4"); numeric JSON fields for probabilities or rewards are
// rejected. parse(serialize(x)) == x, and serialize(parse(text)) == text on
// canonical forms.

ProblemSpec parse_problem_json(const std::string& text);
std::string problem_to_json(const ProblemSpec& problem);

SourceDistribution parse_source_json(const std::string& text);
std::string source_to_json(const SourceDistribution& source);

AifvCode parse_code_json(const std::string& text);
std::string code_to_json(const AifvCode& code);

ProblemSpec load_problem(const std::string& path);
SourceDistribution load_source(const std::string& path);
AifvCode load_code(const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// Binary bit container: 8-byte big-endian symbol count, then the bits
/// packed most-significant-bit first and zero-padded to a byte boundary.
std::string pack_bits(const std::string& bits, unsigned long long num_symbols);

/// Inverse of pack_bits up to padding: returns the padded bit string (a
/// multiple of 8 long) and the symbol count. The caller decodes the stated
/// number of symbols and checks that at most 7 zero pad bits remain.
std::pair<std::string, unsigned long long> unpack_bits(const std::string& container);

std::string trace_to_csv(const IterationTrace& trace);
std::string slice_trace_to_csv(const SliceSearchReport& report);

/// Envelope table over a uniform grid: (grid+1)^(m-1) rows of x, g_0..g_{m-1}
/// and h, each quantity once as an exact fraction and once as a "≈"-flagged
/// six-digit decimal. Tabular output is limited to m <= 3.
std::string envelope_csv(const ProblemSpec& problem, const std::vector<Rat>& lo,
                         const std::vector<Rat>& hi, int grid);

}  // namespace mcp
