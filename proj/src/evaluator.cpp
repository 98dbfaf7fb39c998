#include "karelgs/evaluator.hpp"

#include <numeric>
#include <stdexcept>

namespace karelgs {

Evaluator::Evaluator(TaskId task, std::span<const std::uint64_t> variant_seeds,
                     EpisodeLimits limits)
    : task_(task), limits_(limits) {
    if (variant_seeds.empty()) throw std::invalid_argument("need at least one variant seed");
    variants_.reserve(variant_seeds.size());
    for (std::uint64_t seed : variant_seeds) variants_.push_back(generate_variant(task, seed));
    hooks_ = task_hooks(task, variants_.front());
}

double Evaluator::evaluate(const ProgramAst& ast) {
    double sum = 0.0;
    for (const WorldState& init : variants_) {
        Trajectory t = run_episode(ast, init, hooks_, limits_);
        sum += t.total_return;
    }
    ++evaluations_;
    return sum / static_cast<double>(variants_.size());
}

std::vector<std::uint64_t> default_variant_seeds(int count) {
    std::vector<std::uint64_t> seeds(static_cast<std::size_t>(count));
    std::iota(seeds.begin(), seeds.end(), 0);
    return seeds;
}

double evaluate_mean_return(const ProgramAst& ast, TaskId task,
                            std::span<const std::uint64_t> variant_seeds, EpisodeLimits limits) {
    Evaluator ev(task, variant_seeds, limits);
    return ev.evaluate(ast);
}

} // namespace karelgs
