#pragma once

#include "karelgs/interpreter.hpp"
#include "karelgs/tasks.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace karelgs {

// Scores programs on a fixed set of task variants. The variants are
// generated once from their seeds and reused for every evaluation, so a
// program's score is deterministic given (program, task, seeds).
class Evaluator {
public:
    Evaluator(TaskId task, std::span<const std::uint64_t> variant_seeds,
              EpisodeLimits limits = EpisodeLimits{});

    // Arithmetic mean of episodic returns over the C variants, in seed order.
    double evaluate(const ProgramAst& ast);

    TaskId task() const { return task_; }
    int variant_count() const { return static_cast<int>(variants_.size()); }
    const WorldState& variant(int i) const { return variants_[static_cast<std::size_t>(i)]; }
    long evaluations() const { return evaluations_; }
    const EpisodeLimits& limits() const { return limits_; }

private:
    TaskId task_;
    EpisodeLimits limits_;
    std::vector<WorldState> variants_;
    RewardHooks hooks_;
    long evaluations_ = 0;
};

// Default evaluation seeds 0..count-1.
std::vector<std::uint64_t> default_variant_seeds(int count);

// One-shot convenience around Evaluator.
double evaluate_mean_return(const ProgramAst& ast, TaskId task,
                            std::span<const std::uint64_t> variant_seeds,
                            EpisodeLimits limits = EpisodeLimits{});

} // namespace karelgs
