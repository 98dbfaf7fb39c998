#pragma once

#include "karelgs/ast.hpp"
#include "karelgs/rng.hpp"

#include <array>

namespace karelgs {

// Categorical production probabilities per nonterminal.
struct ProductionTable {
    // Statement: While, Repeat, Concatenate, If, IfElse, Action
    std::array<double, 6> statement{0.15, 0.03, 0.5, 0.08, 0.04, 0.2};
    // Condition: Boolean, not
    std::array<double, 2> condition{0.9, 0.1};
    // Action: move, turnLeft, turnRight, putMarker, pickMarker
    std::array<double, 5> action{0.5, 0.15, 0.15, 0.1, 0.1};
    // Boolean: frontIsClear, leftIsClear, rightIsClear, markersPresent, noMarkersPresent
    std::array<double, 5> boolean{0.5, 0.15, 0.15, 0.1, 0.1};
    // Number: 0..19, each 0.05 (uniform)
};

enum class StatementProduction : int { While = 0, Repeat, Concatenate, If, IfElse, Action };

// Raw categorical draws (no budget masking); these are what the
// goodness-of-fit tests sample.
StatementProduction draw_statement_production(RngStream& rng,
                                              const ProductionTable& table = ProductionTable{});
AgentAction sample_action(RngStream& rng, const ProductionTable& table = ProductionTable{});
Perception sample_perception(RngStream& rng, const ProductionTable& table = ProductionTable{});
Condition sample_condition(RngStream& rng, const ProductionTable& table = ProductionTable{});
int sample_number(RngStream& rng);

// Samples a statement sequence from the production table. Control-flow
// productions are masked once the depth budget hits 0 and any production
// whose minimum token cost exceeds the remaining token budget is masked too,
// with the remaining probability mass renormalized; the fragment therefore
// always terminates and fits the budgets. `slot_budget` caps how many
// statements the fragment may flatten to (the root concatenation limit).
StmtList sample_statements(RngStream& rng, int depth_budget, int token_budget, int slot_budget,
                           const ProductionTable& table = ProductionTable{});

// A full random program satisfying the limits.
ProgramAst random_program(RngStream& rng, const AstLimits& limits = AstLimits{},
                          const ProductionTable& table = ProductionTable{});

struct MutationInfo {
    int site_count = 0;  // eligible nodes in the input
    int site_index = -1; // which one was replaced
};

// Replaces one uniformly chosen AST node (statement, condition, or repeat
// count; never the root run wrapper) with a freshly sampled subtree. The
// result always satisfies the limits: sampling is budget-masked, and if a
// recheck still fails after bounded retries the chosen statement is replaced
// by a single action.
ProgramAst neighbor(const ProgramAst& ast, RngStream& rng, const AstLimits& limits = AstLimits{},
                    const ProductionTable& table = ProductionTable{}, MutationInfo* info = nullptr);

// Token count of one statement subtree in the canonical printed form.
int statement_tokens(const Stmt& s);

} // namespace karelgs
