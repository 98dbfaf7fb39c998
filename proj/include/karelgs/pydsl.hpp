#pragma once

#include "karelgs/ast.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace karelgs {

// ---------------------------------------------------------------------------
// Restricted Python: a single run() whose body uses while/if/else/for-range,
// the five action calls, the five perception calls, and not. Anything else is
// a whitelist violation, never silently dropped.

struct PyCondition {
    enum class Kind : int { Perception, TrueLiteral, FalseLiteral } kind = Kind::Perception;
    Perception perception{};
    bool negated = false;
    int line = 0;
};

struct PyStmt;
using PyBody = std::vector<PyStmt>;

struct PyStmt {
    enum class Kind : int { Call, While, If, IfElse, ForRange } kind = Kind::Call;
    AgentAction action{}; // Call
    PyCondition cond;     // While/If/IfElse
    int range_count = 0;  // ForRange
    PyBody body;
    PyBody else_body; // IfElse
    int line = 0;     // 1-based line in the source text
};

struct RestrictedPyAst {
    PyBody body;
    int def_line = 1;
};

class WhitelistViolation : public std::runtime_error {
public:
    WhitelistViolation(const std::string& construct, int line)
        : std::runtime_error("line " + std::to_string(line) + ": " + construct),
          construct_(construct), line_(line) {}
    const std::string& construct() const { return construct_; }
    int line() const { return line_; }

private:
    std::string construct_;
    int line_;
};

class PyIndentationError : public std::runtime_error {
public:
    PyIndentationError(const std::string& what, int line)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

// Indentation-sensitive parse of the whitelisted subset. `while True:` parses
// (the literal is handled downstream by the repair pass).
RestrictedPyAst parse_restricted_python(const std::string& text);

class UnconvertibleNode : public std::runtime_error {
public:
    explicit UnconvertibleNode(const std::string& what) : std::runtime_error(what) {}
};

// Applies the 16 Python-to-DSL rewrite rules verbatim. True/False conditions
// are emitted as literal tokens for the repair pass to transform.
std::string convert_py_to_dsl(const RestrictedPyAst& py);

// ---------------------------------------------------------------------------
// Post-processing repair of the common model mistakes. Each rule is exposed
// individually (they are tested against their before/after pairs) and
// `repair` runs them in the fixed order below, followed by the
// not-markersPresent normalization.

std::string repair_brackets_removal(const std::string& text);
std::string repair_brackets_separation(const std::string& text);
std::string repair_brackets_addition(const std::string& text);
std::string repair_brackets_repairment(const std::string& text);
std::string repair_if_to_ifelse(const std::string& text);
std::string repair_redundant_symbols(const std::string& text);
std::string repair_illegal_symbols(const std::string& text);
std::string repair_normalize_not(const std::string& text);

struct RepairResult {
    std::string text;      // the repaired token stream (single-space separated)
    bool parses = false;   // whether `text` parses as a program
    std::string error;     // residual syntax error when it does not
    std::optional<ProgramAst> ast;
};

RepairResult repair(const std::string& dsl_text);

// ---------------------------------------------------------------------------
// Candidate extraction from raw model responses.

struct RawCandidate {
    enum class SourceKind : int { PythonBlock, DslBlock } source_kind{};
    std::string text;
    int origin = 0; // index of the fenced block within the response
};

std::vector<RawCandidate> extract_code_blocks(const std::string& response);

struct CandidateProgram {
    ProgramAst ast;
    std::string canonical;              // canonical printed form
    RawCandidate::SourceKind source{};  // which path produced it
    std::string python_source;          // original Python text, when applicable
    std::vector<int> node_lines;        // preorder DSL statement -> Python line
};

struct ExtractionLogEntry {
    int block = 0;
    std::string path;   // "python" or "dsl"
    bool accepted = false;
    std::string reason; // why the block was dropped, when it was
};

// Python blocks run parse -> convert -> repair; DSL blocks run repair
// directly and serve as the backup when no Python-derived program survives.
// Results are deduplicated by canonical printed form and must satisfy the
// AST limits. An empty result is not an error; `log` explains every drop.
std::vector<CandidateProgram> extract_candidates(const std::string& response,
                                                 const AstLimits& limits = AstLimits{},
                                                 std::vector<ExtractionLogEntry>* log = nullptr);

} // namespace karelgs
