#pragma once

#include "karelgs/evaluator.hpp"
#include "karelgs/llm_client.hpp"
#include "karelgs/search.hpp"
#include "karelgs/tasks.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace karelgs {

enum class Method : std::uint8_t { LlmGs, HcFixedK, ShcRandomInit, ShcLlmInit };

const char* method_name(Method m);
bool parse_method(const std::string& name, Method& out);

struct ExperimentConfig {
    TaskId task = TaskId::Maze;
    Method method = Method::LlmGs;
    std::vector<std::uint64_t> seeds{0};
    int variant_count = 32; // C
    long budget = 1000000;  // N
    long hc_k = 250;        // neighborhood size for hc_fixed_k
    SchedulerConfig scheduler;
    AstLimits limits;
    EpisodeLimits episode_limits;
    LlmClientConfig llm;
    int population = 32; // initial programs requested per seed
    PromptMode prompt_mode = PromptMode::PythonicDsl;
    std::vector<std::string> init_programs; // shc_llm_init: DSL program texts
    std::string output_dir;
    int threads = 1; // seeds run as independent jobs
};

struct SeedResult {
    std::uint64_t seed = 0;
    std::vector<HistoryPoint> curve; // non-decreasing best over n
    double best_return = 0.0;
    std::string best_program;
    long evaluations_used = 0;
    int responses = 0;         // LLM responses consumed (llm_gs)
    int accepted_programs = 0; // programs surviving extraction (llm_gs)
    int restarts = 0;          // random re-inits (hc_fixed_k)
    bool operator==(const SeedResult&) const = default;
};

struct RunRecord {
    std::string task;
    std::string method;
    int variant_count = 0;
    long budget = 0;
    long hc_k = 0;
    int population = 0;
    std::string prompt_mode;
    std::string scheduler_variant; // e.g. "log-sin-log"
    std::vector<SeedResult> seeds;
    bool operator==(const RunRecord&) const = default;
};

// Checkpoint grid for curve logging: powers of 10 and sqrt(10) in n, i.e.
// 1, 3, 10, 32, 100, 316, 1000, ... up to `budget`.
std::vector<long> checkpoint_grid(long budget);

// Resamples an improvement history onto the checkpoint grid (keeping the
// improvement points themselves) and closes the curve at n_final.
std::vector<HistoryPoint> expand_curve(const std::vector<HistoryPoint>& history, long n_final,
                                       long budget);

RunRecord run_experiment(const ExperimentConfig& cfg);

// CSV: one per-seed file (seed,n,best_return) plus an aggregate file with
// per-n mean and normal-approximation 95% CI across seeds. JSON: the full
// RunRecord, round-trippable through read_record.
void emit_results(const RunRecord& record, const std::string& format,
                  const std::string& out_dir);

void write_record(const RunRecord& record, const std::string& path);
RunRecord read_record(const std::string& path);

} // namespace karelgs
