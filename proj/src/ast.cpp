#include "karelgs/ast.hpp"

#include <algorithm>
#include <sstream>

namespace karelgs {

namespace {

void print_condition(std::ostringstream& out, const Condition& c) {
    if (c.negated) {
        out << "not c( " << perception_name(c.perception) << " c)";
    } else {
        out << perception_name(c.perception);
    }
}

void print_stmts(std::ostringstream& out, const StmtList& stmts);

void print_stmt(std::ostringstream& out, const Stmt& s) {
    if (const auto* a = std::get_if<ActionStmt>(&s.node)) {
        out << action_name(a->action);
    } else if (const auto* w = std::get_if<WhileStmt>(&s.node)) {
        out << "WHILE c( ";
        print_condition(out, w->cond);
        out << " c) w( ";
        print_stmts(out, w->body);
        out << " w)";
    } else if (const auto* r = std::get_if<RepeatStmt>(&s.node)) {
        out << "REPEAT R=" << r->count << " r( ";
        print_stmts(out, r->body);
        out << " r)";
    } else if (const auto* i = std::get_if<IfStmt>(&s.node)) {
        out << "IF c( ";
        print_condition(out, i->cond);
        out << " c) i( ";
        print_stmts(out, i->body);
        out << " i)";
    } else if (const auto* ie = std::get_if<IfElseStmt>(&s.node)) {
        out << "IFELSE c( ";
        print_condition(out, ie->cond);
        out << " c) i( ";
        print_stmts(out, ie->then_body);
        out << " i) ELSE e( ";
        print_stmts(out, ie->else_body);
        out << " e)";
    }
}

void print_stmts(std::ostringstream& out, const StmtList& stmts) {
    for (std::size_t i = 0; i < stmts.size(); ++i) {
        if (i > 0) out << ' ';
        print_stmt(out, stmts[i]);
    }
}

int condition_tokens(const Condition& c) { return c.negated ? 4 : 1; }

int stmt_tokens(const Stmt& s);

int list_tokens(const StmtList& stmts) {
    int n = 0;
    for (const Stmt& s : stmts) n += stmt_tokens(s);
    return n;
}

int stmt_tokens(const Stmt& s) {
    if (std::holds_alternative<ActionStmt>(s.node)) return 1;
    if (const auto* w = std::get_if<WhileStmt>(&s.node))
        return 5 + condition_tokens(w->cond) + list_tokens(w->body);
    if (const auto* r = std::get_if<RepeatStmt>(&s.node)) return 4 + list_tokens(r->body);
    if (const auto* i = std::get_if<IfStmt>(&s.node))
        return 5 + condition_tokens(i->cond) + list_tokens(i->body);
    const auto& ie = std::get<IfElseStmt>(s.node);
    return 8 + condition_tokens(ie.cond) + list_tokens(ie.then_body) + list_tokens(ie.else_body);
}

int stmt_depth(const Stmt& s);

int list_depth(const StmtList& stmts) {
    int d = 0;
    for (const Stmt& s : stmts) d = std::max(d, stmt_depth(s));
    return d;
}

int stmt_depth(const Stmt& s) {
    if (std::holds_alternative<ActionStmt>(s.node)) return 0;
    if (const auto* w = std::get_if<WhileStmt>(&s.node)) return 1 + list_depth(w->body);
    if (const auto* r = std::get_if<RepeatStmt>(&s.node)) return 1 + list_depth(r->body);
    if (const auto* i = std::get_if<IfStmt>(&s.node)) return 1 + list_depth(i->body);
    const auto& ie = std::get<IfElseStmt>(s.node);
    return 1 + std::max(list_depth(ie.then_body), list_depth(ie.else_body));
}

} // namespace

std::string print_program(const ProgramAst& ast) {
    std::ostringstream out;
    out << "DEF run m( ";
    print_stmts(out, ast.body);
    out << " m)";
    return out.str();
}

AstMetrics metrics(const ProgramAst& ast) {
    AstMetrics m;
    m.token_length = 5 + list_tokens(ast.body); // DEF run m( ... m)
    m.depth = list_depth(ast.body);
    m.root_statements = static_cast<int>(ast.body.size());
    return m;
}

bool within_limits(const AstMetrics& m, const AstLimits& limits) {
    return m.root_statements <= limits.max_statements_at_root &&
           m.token_length <= limits.max_token_length && m.depth <= limits.max_depth;
}

bool within_limits(const ProgramAst& ast, const AstLimits& limits) {
    return within_limits(metrics(ast), limits);
}

Stmt make_action(AgentAction a) { return Stmt{ActionStmt{a}}; }
Stmt make_while(Condition c, StmtList body) { return Stmt{WhileStmt{c, std::move(body)}}; }
Stmt make_repeat(int count, StmtList body) { return Stmt{RepeatStmt{count, std::move(body)}}; }
Stmt make_if(Condition c, StmtList body) { return Stmt{IfStmt{c, std::move(body)}}; }
Stmt make_ifelse(Condition c, StmtList then_body, StmtList else_body) {
    return Stmt{IfElseStmt{c, std::move(then_body), std::move(else_body)}};
}

} // namespace karelgs
