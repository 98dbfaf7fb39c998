#pragma once

#include "karelgs/world.hpp"

#include <string>
#include <variant>
#include <vector>

namespace karelgs {

// Condition of a control-flow statement: a perception, optionally negated.
struct Condition {
    Perception perception{};
    bool negated = false;
    bool operator==(const Condition&) const = default;
};

inline constexpr int kRepeatMin = 0;
inline constexpr int kRepeatMax = 19;

struct Stmt;
using StmtList = std::vector<Stmt>;

struct ActionStmt {
    AgentAction action{};
    bool operator==(const ActionStmt&) const = default;
};
struct WhileStmt {
    Condition cond;
    StmtList body;
    bool operator==(const WhileStmt&) const = default;
};
struct RepeatStmt {
    int count = 0; // 0..19
    StmtList body;
    bool operator==(const RepeatStmt&) const = default;
};
struct IfStmt {
    Condition cond;
    StmtList body;
    bool operator==(const IfStmt&) const = default;
};
struct IfElseStmt {
    Condition cond;
    StmtList then_body;
    StmtList else_body;
    bool operator==(const IfElseStmt&) const = default;
};

// Statement sequences ("s1 s2" in the grammar) are kept flattened into
// StmtList, which makes AST equality well-defined for round-trip checks.
struct Stmt {
    std::variant<ActionStmt, WhileStmt, RepeatStmt, IfStmt, IfElseStmt> node;
    bool operator==(const Stmt&) const = default;
};

struct ProgramAst {
    StmtList body; // the statements of DEF run m( ... m); never empty for a parsed program
    bool operator==(const ProgramAst&) const = default;
};

// Canonical single-space-separated token stream, e.g. "DEF run m( move m)".
std::string print_program(const ProgramAst& ast);

struct AstMetrics {
    int token_length = 0;    // tokens of the canonical printed form
    int depth = 0;           // nesting level of control flow; a flat program is 0
    int root_statements = 0; // statements concatenated at the root
};

AstMetrics metrics(const ProgramAst& ast);

struct AstLimits {
    int max_statements_at_root = 6;
    int max_token_length = 44;
    int max_depth = 4;
};

bool within_limits(const AstMetrics& m, const AstLimits& limits);
bool within_limits(const ProgramAst& ast, const AstLimits& limits);

// Convenience constructors used by tests and built-in programs.
Stmt make_action(AgentAction a);
Stmt make_while(Condition c, StmtList body);
Stmt make_repeat(int count, StmtList body);
Stmt make_if(Condition c, StmtList body);
Stmt make_ifelse(Condition c, StmtList then_body, StmtList else_body);

} // namespace karelgs
