#include "karelgs/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace karelgs {

long schedule_k(long n, const SchedulerConfig& cfg) {
    if (n < 1) n = 1;
    double ratio;
    if (cfg.ratio == RatioKind::Logarithmic) {
        ratio = std::log(double(n)) / std::log(double(cfg.total_budget));
    } else {
        ratio = double(n) / double(cfg.total_budget);
    }
    ratio = std::clamp(ratio, 0.0, 1.0);
    double r;
    if (cfg.schedule == Schedule::Sinusoidal) {
        r = (std::sin((2.0 * ratio - 1.0) * std::numbers::pi / 2.0) + 1.0) / 2.0;
    } else {
        r = ratio;
    }
    double k;
    if (cfg.interpolation == Interpolation::Logarithmic) {
        double log2k = (1.0 - r) * std::log2(double(cfg.k_start)) +
                       r * std::log2(double(cfg.k_end));
        k = std::exp2(log2k);
    } else {
        k = (1.0 - r) * double(cfg.k_start) + r * double(cfg.k_end);
    }
    long rounded = std::lround(k);
    return std::clamp(rounded, cfg.k_start, cfg.k_end);
}

namespace {

void record_best(SearchState& st, const CandidateRecord& cand) {
    st.best = cand;
    st.history.push_back({st.evaluations_used, cand.mean_return});
}

// Evaluates `ast`, charging one unit of budget. Returns false when the
// budget was already spent.
bool score(SearchState& st, const ScoreFn& evaluate, const ProgramAst& ast, long budget,
           CandidateRecord& out) {
    if (st.evaluations_used >= budget) return false;
    out.program = ast;
    out.mean_return = evaluate(ast);
    ++st.evaluations_used;
    out.eval_index = st.evaluations_used;
    return true;
}

// Core climb loop sharing the caller's SearchState/budget; `init_score`
// carries the init's return when it was already evaluated by the caller.
void climb_from(SearchState& st, const ScoreFn& evaluate, const ProgramAst& init,
                const KProvider& k_provider, long budget, RngStream& rng,
                const SearchOptions& opts, std::optional<double> init_score) {
    CandidateRecord current;
    if (init_score) {
        current.program = init;
        current.mean_return = *init_score;
        current.eval_index = st.evaluations_used;
    } else {
        if (!score(st, evaluate, init, budget, current)) return;
        if (current.mean_return > st.best.mean_return || st.history.empty())
            record_best(st, current);
    }
    st.current = current;
    if (current.mean_return >= opts.optimal_return) {
        st.found_optimal = true;
        return;
    }

    bool improved = true;
    while (improved && st.evaluations_used < budget) {
        improved = false;
        long k = k_provider(st.evaluations_used + 1);
        for (long i = 0; i < k; ++i) {
            if (st.evaluations_used >= budget) break;
            ProgramAst cand_ast = neighbor(current.program, rng, opts.limits, opts.productions);
            CandidateRecord cand;
            if (!score(st, evaluate, cand_ast, budget, cand)) break;
            if (cand.mean_return > current.mean_return) {
                current = cand;
                st.current = current;
                if (cand.mean_return > st.best.mean_return) record_best(st, cand);
                improved = true;
                break; // first improvement re-centers immediately
            }
        }
        if (current.mean_return >= opts.optimal_return) {
            st.found_optimal = true;
            return;
        }
    }
}

} // namespace

SearchState hill_climb(const ProgramAst& init, const KProvider& k_provider,
                       const ScoreFn& evaluate, long budget, RngStream& rng,
                       const SearchOptions& opts) {
    SearchState st;
    st.best.mean_return = -std::numeric_limits<double>::infinity();
    climb_from(st, evaluate, init, k_provider, budget, rng, opts, std::nullopt);
    if (!st.history.empty()) {
        // close the curve at the final budget position
        if (st.history.back().n != st.evaluations_used)
            st.history.push_back({st.evaluations_used, st.best.mean_return});
    }
    return st;
}

SearchState scheduled_hill_climb(const std::vector<ProgramAst>& inits, const SchedulerConfig& cfg,
                                 const ScoreFn& evaluate, RngStream& rng,
                                 const SearchOptions& opts) {
    SearchState st;
    st.best.mean_return = -std::numeric_limits<double>::infinity();
    const long budget = cfg.total_budget;
    KProvider k_provider = [&cfg](long n) { return schedule_k(n, cfg); };

    // score the whole population first
    std::vector<CandidateRecord> scored;
    for (const ProgramAst& ast : inits) {
        CandidateRecord rec;
        if (!score(st, evaluate, ast, budget, rec)) break;
        if (rec.mean_return > st.best.mean_return) record_best(st, rec);
        scored.push_back(std::move(rec));
    }
    if (st.best.mean_return >= opts.optimal_return) {
        st.found_optimal = true;
        st.current = st.best;
        return st;
    }
    std::stable_sort(scored.begin(), scored.end(),
                     [](const CandidateRecord& a, const CandidateRecord& b) {
                         return a.mean_return > b.mean_return;
                     });

    std::size_t next_init = 0;
    while (st.evaluations_used < budget && !st.found_optimal) {
        if (next_init < scored.size()) {
            const CandidateRecord& rec = scored[next_init++];
            climb_from(st, evaluate, rec.program, k_provider, budget, rng, opts,
                       rec.mean_return);
        } else {
            ProgramAst fresh = random_program(rng, opts.limits, opts.productions);
            climb_from(st, evaluate, fresh, k_provider, budget, rng, opts, std::nullopt);
        }
    }
    if (!st.history.empty() && st.history.back().n != st.evaluations_used)
        st.history.push_back({st.evaluations_used, st.best.mean_return});
    return st;
}

} // namespace karelgs
