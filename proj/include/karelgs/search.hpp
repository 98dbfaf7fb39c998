#pragma once

#include "karelgs/ast.hpp"
#include "karelgs/mutation.hpp"
#include "karelgs/rng.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace karelgs {

enum class Interpolation : std::uint8_t { Logarithmic, Linear };
enum class Schedule : std::uint8_t { Sinusoidal, Linear };
enum class RatioKind : std::uint8_t { Logarithmic, Linear };

struct SchedulerConfig {
    long k_start = 32;
    long k_end = 2048;
    long total_budget = 1000000; // N
    Interpolation interpolation = Interpolation::Logarithmic;
    Schedule schedule = Schedule::Sinusoidal;
    RatioKind ratio = RatioKind::Logarithmic;
};

// Neighborhood size after n of N evaluations. n is clamped to >= 1 (the
// logarithmic ratio is undefined at 0) and the result is rounded to the
// nearest integer; the default variant interpolates log2 k between k_start
// and k_end under a sinusoidal ramp of the log-ratio.
long schedule_k(long n, const SchedulerConfig& cfg);

struct CandidateRecord {
    ProgramAst program;
    double mean_return = 0.0;
    long eval_index = 0; // value of n when this program was scored
};

struct HistoryPoint {
    long n = 0;
    double best_return = 0.0;
};

struct SearchState {
    long evaluations_used = 0;
    CandidateRecord best;
    CandidateRecord current;
    std::vector<HistoryPoint> history; // appended at every best improvement
    bool found_optimal = false;
};

using KProvider = std::function<long(long n)>;

// Mean episodic return of a program over the task's C variants; one call is
// one unit of the evaluation budget.
using ScoreFn = std::function<double(const ProgramAst&)>;

struct SearchOptions {
    AstLimits limits{};
    ProductionTable productions{};
    double optimal_return = 1.0;
};

// Hill climbing per the first-improvement rule: evaluate up to k neighbors of
// the current program; re-center on the first strictly improving one; halt
// when a full batch brings no improvement, the optimum is reached, or the
// budget runs out.
SearchState hill_climb(const ProgramAst& init, const KProvider& k_provider,
                       const ScoreFn& evaluate, long budget, RngStream& rng,
                       const SearchOptions& opts = SearchOptions{});

// The scheduled variant over a population of initial programs: all inits are
// scored first (counting against the budget), sorted by mean return
// descending, then hill-climbed in order under the shared budget and the
// shared global n driving schedule_k. When the inits run out, fresh random
// programs keep the search going. An empty init list falls back to random
// initialization from the start.
SearchState scheduled_hill_climb(const std::vector<ProgramAst>& inits, const SchedulerConfig& cfg,
                                 const ScoreFn& evaluate, RngStream& rng,
                                 const SearchOptions& opts = SearchOptions{});

} // namespace karelgs
