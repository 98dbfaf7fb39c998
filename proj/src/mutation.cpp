#include "karelgs/mutation.hpp"

#include <limits>
#include <variant>

namespace karelgs {

namespace {

// Minimum token cost of each statement production.
constexpr int kMinAction = 1;
constexpr int kMinWhile = 7;   // WHILE c( h c) w( a w)
constexpr int kMinRepeat = 5;  // REPEAT R=n r( a r)
constexpr int kMinIf = 7;      // IF c( h c) i( a i)
constexpr int kMinIfElse = 10; // IFELSE c( h c) i( a i) ELSE e( a e)
constexpr int kMinConcat = 2;

constexpr int kUnbounded = std::numeric_limits<int>::max() / 4;

} // namespace

StatementProduction draw_statement_production(RngStream& rng, const ProductionTable& table) {
    return static_cast<StatementProduction>(rng.pick_weighted(table.statement));
}

AgentAction sample_action(RngStream& rng, const ProductionTable& table) {
    return static_cast<AgentAction>(rng.pick_weighted(table.action));
}

Perception sample_perception(RngStream& rng, const ProductionTable& table) {
    return static_cast<Perception>(rng.pick_weighted(table.boolean));
}

Condition sample_condition(RngStream& rng, const ProductionTable& table) {
    Condition c;
    c.negated = rng.pick_weighted(table.condition) == 1;
    c.perception = sample_perception(rng, table);
    return c;
}

int sample_number(RngStream& rng) { return rng.uniform_int(kRepeatMin, kRepeatMax); }

namespace {

// Condition draw honoring a token budget (a negated condition costs 4 tokens
// instead of 1).
Condition sample_condition_budgeted(RngStream& rng, const ProductionTable& table,
                                    int token_budget) {
    if (token_budget < 4) {
        Condition c;
        c.negated = false;
        c.perception = sample_perception(rng, table);
        return c;
    }
    return sample_condition(rng, table);
}

struct Sampler {
    RngStream& rng;
    const ProductionTable& table;

    StmtList sample(int depth_budget, int token_budget, int slot_budget) {
        StmtList out;
        sample_into(out, depth_budget, token_budget, slot_budget);
        return out;
    }

    // Appends one Statement draw (a concat draw appends several) to `out`.
    // Returns tokens consumed.
    int sample_into(StmtList& out, int depth_budget, int token_budget, int slot_budget) {
        std::array<double, 6> w = table.statement;
        bool control_ok = depth_budget >= 1;
        if (!control_ok || token_budget < kMinWhile) w[int(StatementProduction::While)] = 0;
        if (!control_ok || token_budget < kMinRepeat) w[int(StatementProduction::Repeat)] = 0;
        if (!control_ok || token_budget < kMinIf) w[int(StatementProduction::If)] = 0;
        if (!control_ok || token_budget < kMinIfElse) w[int(StatementProduction::IfElse)] = 0;
        if (slot_budget < 2 || token_budget < kMinConcat)
            w[int(StatementProduction::Concatenate)] = 0;

        switch (static_cast<StatementProduction>(rng.pick_weighted(w))) {
        case StatementProduction::Action:
            out.push_back(make_action(sample_action(rng, table)));
            return 1;
        case StatementProduction::While: {
            Condition c = sample_condition_budgeted(rng, table, token_budget - 5 - 1);
            int cond_tokens = c.negated ? 4 : 1;
            StmtList body = sample(depth_budget - 1, token_budget - 5 - cond_tokens, kUnbounded);
            int used = 5 + cond_tokens;
            for (const Stmt& s : body) used += statement_tokens(s);
            out.push_back(make_while(c, std::move(body)));
            return used;
        }
        case StatementProduction::Repeat: {
            int count = sample_number(rng);
            StmtList body = sample(depth_budget - 1, token_budget - 4, kUnbounded);
            int used = 4;
            for (const Stmt& s : body) used += statement_tokens(s);
            out.push_back(make_repeat(count, std::move(body)));
            return used;
        }
        case StatementProduction::If: {
            Condition c = sample_condition_budgeted(rng, table, token_budget - 5 - 1);
            int cond_tokens = c.negated ? 4 : 1;
            StmtList body = sample(depth_budget - 1, token_budget - 5 - cond_tokens, kUnbounded);
            int used = 5 + cond_tokens;
            for (const Stmt& s : body) used += statement_tokens(s);
            out.push_back(make_if(c, std::move(body)));
            return used;
        }
        case StatementProduction::IfElse: {
            Condition c = sample_condition_budgeted(rng, table, token_budget - 8 - 2);
            int cond_tokens = c.negated ? 4 : 1;
            int body_budget = token_budget - 8 - cond_tokens;
            // reserve one token for the else branch
            StmtList then_body = sample(depth_budget - 1, body_budget - 1, kUnbounded);
            int then_tokens = 0;
            for (const Stmt& s : then_body) then_tokens += statement_tokens(s);
            StmtList else_body = sample(depth_budget - 1, body_budget - then_tokens, kUnbounded);
            int used = 8 + cond_tokens + then_tokens;
            for (const Stmt& s : else_body) used += statement_tokens(s);
            out.push_back(make_ifelse(c, std::move(then_body), std::move(else_body)));
            return used;
        }
        case StatementProduction::Concatenate: {
            std::size_t before = out.size();
            int first = sample_into(out, depth_budget, token_budget - 1, slot_budget - 1);
            int taken = static_cast<int>(out.size() - before);
            int second =
                sample_into(out, depth_budget, token_budget - first, slot_budget - taken);
            return first + second;
        }
        }
        return 0;
    }
};

} // namespace

int statement_tokens(const Stmt& s) {
    if (std::holds_alternative<ActionStmt>(s.node)) return 1;
    if (const auto* w = std::get_if<WhileStmt>(&s.node)) {
        int n = 5 + (w->cond.negated ? 4 : 1);
        for (const Stmt& b : w->body) n += statement_tokens(b);
        return n;
    }
    if (const auto* r = std::get_if<RepeatStmt>(&s.node)) {
        int n = 4;
        for (const Stmt& b : r->body) n += statement_tokens(b);
        return n;
    }
    if (const auto* i = std::get_if<IfStmt>(&s.node)) {
        int n = 5 + (i->cond.negated ? 4 : 1);
        for (const Stmt& b : i->body) n += statement_tokens(b);
        return n;
    }
    const auto& ie = std::get<IfElseStmt>(s.node);
    int n = 8 + (ie.cond.negated ? 4 : 1);
    for (const Stmt& b : ie.then_body) n += statement_tokens(b);
    for (const Stmt& b : ie.else_body) n += statement_tokens(b);
    return n;
}

StmtList sample_statements(RngStream& rng, int depth_budget, int token_budget, int slot_budget,
                           const ProductionTable& table) {
    Sampler sampler{rng, table};
    return sampler.sample(depth_budget, token_budget, slot_budget);
}

ProgramAst random_program(RngStream& rng, const AstLimits& limits, const ProductionTable& table) {
    ProgramAst ast;
    ast.body = sample_statements(rng, limits.max_depth, limits.max_token_length - 5,
                                 limits.max_statements_at_root, table);
    return ast;
}

namespace {

// A mutable location in the AST: a statement slot, a condition, or a repeat
// count. The root run node is not a site.
struct StmtSlot {
    StmtList* list;
    int index;
    int depth;   // control-flow nesting of the slot (root list = 0)
    bool at_root;
};
struct CondSite {
    Condition* cond;
};
struct NumSite {
    int* count;
};
using Site = std::variant<StmtSlot, CondSite, NumSite>;

void collect_sites(StmtList& list, int depth, bool at_root, std::vector<Site>& out) {
    for (std::size_t i = 0; i < list.size(); ++i) {
        out.push_back(StmtSlot{&list, static_cast<int>(i), depth, at_root});
        Stmt& s = list[i];
        if (auto* w = std::get_if<WhileStmt>(&s.node)) {
            out.push_back(CondSite{&w->cond});
            collect_sites(w->body, depth + 1, false, out);
        } else if (auto* r = std::get_if<RepeatStmt>(&s.node)) {
            out.push_back(NumSite{&r->count});
            collect_sites(r->body, depth + 1, false, out);
        } else if (auto* f = std::get_if<IfStmt>(&s.node)) {
            out.push_back(CondSite{&f->cond});
            collect_sites(f->body, depth + 1, false, out);
        } else if (auto* ie = std::get_if<IfElseStmt>(&s.node)) {
            out.push_back(CondSite{&ie->cond});
            collect_sites(ie->then_body, depth + 1, false, out);
            collect_sites(ie->else_body, depth + 1, false, out);
        }
    }
}

} // namespace

ProgramAst neighbor(const ProgramAst& ast, RngStream& rng, const AstLimits& limits,
                    const ProductionTable& table, MutationInfo* info) {
    for (int attempt = 0; attempt < 8; ++attempt) {
        ProgramAst out = ast;
        std::vector<Site> sites;
        collect_sites(out.body, 0, true, sites);
        if (sites.empty()) return out;
        int chosen = rng.uniform_int(0, static_cast<int>(sites.size()) - 1);
        if (info) {
            info->site_count = static_cast<int>(sites.size());
            info->site_index = chosen;
        }
        Site& site = sites[static_cast<std::size_t>(chosen)];
        int total_tokens = metrics(out).token_length;

        if (auto* cond = std::get_if<CondSite>(&site)) {
            int old_tokens = cond->cond->negated ? 4 : 1;
            int budget = limits.max_token_length - (total_tokens - old_tokens);
            *cond->cond = sample_condition_budgeted(rng, table, budget);
        } else if (auto* num = std::get_if<NumSite>(&site)) {
            *num->count = sample_number(rng);
        } else {
            StmtSlot slot = std::get<StmtSlot>(site);
            Stmt replaced = (*slot.list)[static_cast<std::size_t>(slot.index)];
            int removed = statement_tokens(replaced);
            int token_budget = limits.max_token_length - (total_tokens - removed);
            int depth_budget = limits.max_depth - slot.depth;
            int slot_budget = kUnbounded;
            if (slot.at_root) {
                slot_budget =
                    limits.max_statements_at_root - (static_cast<int>(out.body.size()) - 1);
            }
            StmtList fragment = sample_statements(rng, depth_budget, token_budget, slot_budget,
                                                  table);
            auto it = slot.list->erase(slot.list->begin() + slot.index);
            slot.list->insert(it, fragment.begin(), fragment.end());
        }
        if (within_limits(out, limits)) return out;
    }
    // retries exhausted: replace one statement with a single action
    ProgramAst out = ast;
    std::vector<Site> sites;
    collect_sites(out.body, 0, true, sites);
    std::vector<StmtSlot> slots;
    for (Site& s : sites)
        if (auto* slot = std::get_if<StmtSlot>(&s)) slots.push_back(*slot);
    StmtSlot slot = slots[static_cast<std::size_t>(rng.uniform_int(0, int(slots.size()) - 1))];
    (*slot.list)[static_cast<std::size_t>(slot.index)] = make_action(sample_action(rng, table));
    if (info) {
        info->site_count = static_cast<int>(sites.size());
        info->site_index = -1;
    }
    return out;
}

} // namespace karelgs
