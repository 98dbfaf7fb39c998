#include "karelgs/experiment.hpp"

#include "karelgs/parser.hpp"
#include "karelgs/pydsl.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace karelgs {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

const char* method_name(Method m) {
    switch (m) {
    case Method::LlmGs: return "llm_gs";
    case Method::HcFixedK: return "hc_fixed_k";
    case Method::ShcRandomInit: return "shc_random_init";
    case Method::ShcLlmInit: return "shc_llm_init";
    }
    return "?";
}

bool parse_method(const std::string& name, Method& out) {
    for (int i = 0; i <= static_cast<int>(Method::ShcLlmInit); ++i) {
        if (name == method_name(static_cast<Method>(i))) {
            out = static_cast<Method>(i);
            return true;
        }
    }
    return false;
}

std::vector<long> checkpoint_grid(long budget) {
    std::vector<long> grid;
    for (int j = 0;; ++j) {
        long v = std::lround(std::pow(10.0, j / 2.0));
        if (v > budget) break;
        if (grid.empty() || grid.back() != v) grid.push_back(v);
    }
    if (grid.empty() || grid.back() != budget) grid.push_back(budget);
    return grid;
}

std::vector<HistoryPoint> expand_curve(const std::vector<HistoryPoint>& history, long n_final,
                                       long budget) {
    if (history.empty()) return {};
    std::vector<long> ns;
    for (const HistoryPoint& p : history)
        if (p.n <= n_final) ns.push_back(p.n);
    for (long g : checkpoint_grid(budget))
        if (g <= n_final) ns.push_back(g);
    ns.push_back(n_final);
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());

    std::vector<HistoryPoint> curve;
    curve.reserve(ns.size());
    std::size_t h = 0;
    double best = history.front().best_return;
    for (long n : ns) {
        while (h < history.size() && history[h].n <= n) {
            best = std::max(best, history[h].best_return);
            ++h;
        }
        curve.push_back({n, best});
    }
    return curve;
}

namespace {

std::string scheduler_variant_name(const SchedulerConfig& cfg) {
    std::string s;
    s += cfg.interpolation == Interpolation::Logarithmic ? "log" : "lin";
    s += cfg.schedule == Schedule::Sinusoidal ? "-sin" : "-lin";
    s += cfg.ratio == RatioKind::Logarithmic ? "-log" : "-lin";
    return s;
}

SeedResult run_seed(const ExperimentConfig& cfg, std::uint64_t seed) {
    SeedResult result;
    result.seed = seed;

    std::vector<std::uint64_t> variant_seeds = default_variant_seeds(cfg.variant_count);
    Evaluator evaluator(cfg.task, variant_seeds, cfg.episode_limits);
    ScoreFn evaluate = [&evaluator](const ProgramAst& ast) { return evaluator.evaluate(ast); };
    RngStream rng(seed);
    SearchOptions opts;
    opts.limits = cfg.limits;

    SchedulerConfig sched = cfg.scheduler;
    sched.total_budget = cfg.budget;

    SearchState st;
    if (cfg.method == Method::LlmGs || cfg.method == Method::ShcLlmInit) {
        std::vector<ProgramAst> inits;
        if (cfg.method == Method::LlmGs) {
            const TaskSpec& spec = task_spec(cfg.task);
            PromptBundle bundle = build_prompts(spec.description, cfg.prompt_mode);
            LlmClientConfig llm_cfg = cfg.llm;
            if (!llm_cfg.journal_dir.empty())
                llm_cfg.journal_dir += "/seed_" + std::to_string(seed);
            LlmClient client(llm_cfg);
            std::vector<std::string> responses =
                client.request_programs(bundle, cfg.population);
            result.responses = static_cast<int>(responses.size());
            std::vector<std::string> seen;
            for (const std::string& response : responses) {
                std::vector<CandidateProgram> cands = extract_candidates(response, cfg.limits);
                if (!cands.empty()) ++result.accepted_programs;
                for (CandidateProgram& c : cands) {
                    if (std::find(seen.begin(), seen.end(), c.canonical) != seen.end()) continue;
                    seen.push_back(c.canonical);
                    inits.push_back(std::move(c.ast));
                }
            }
        } else {
            for (const std::string& text : cfg.init_programs)
                inits.push_back(parse_program(text));
        }
        st = scheduled_hill_climb(inits, sched, evaluate, rng, opts);
    } else if (cfg.method == Method::ShcRandomInit) {
        st = scheduled_hill_climb({}, sched, evaluate, rng, opts);
    } else { // HcFixedK: restart from fresh random programs until the budget runs out
        KProvider fixed_k = [&cfg](long) { return cfg.hc_k; };
        st.best.mean_return = -std::numeric_limits<double>::infinity();
        while (st.evaluations_used < cfg.budget && !st.found_optimal) {
            if (st.evaluations_used > 0) ++result.restarts;
            ProgramAst init = random_program(rng, cfg.limits);
            long remaining = cfg.budget - st.evaluations_used;
            SearchState inner = hill_climb(init, fixed_k, evaluate, remaining, rng, opts);
            for (const HistoryPoint& p : inner.history) {
                double v = p.best_return;
                if (v > st.best.mean_return + 1e-15 || st.history.empty()) {
                    st.history.push_back({st.evaluations_used + p.n, v});
                }
            }
            if (inner.best.mean_return > st.best.mean_return) st.best = inner.best;
            st.evaluations_used += inner.evaluations_used;
            st.found_optimal = inner.found_optimal;
            if (inner.evaluations_used == 0) break;
        }
    }

    result.curve = expand_curve(st.history, st.evaluations_used, cfg.budget);
    result.best_return = st.best.mean_return;
    result.best_program = print_program(st.best.program);
    result.evaluations_used = st.evaluations_used;
    return result;
}

} // namespace

RunRecord run_experiment(const ExperimentConfig& cfg) {
    if (cfg.seeds.empty()) throw std::invalid_argument("seeds must be non-empty");
    if (cfg.variant_count < 1) throw std::invalid_argument("variant count C must be >= 1");
    if (cfg.budget < 1) throw std::invalid_argument("budget N must be >= 1");
    if (cfg.method == Method::ShcLlmInit && cfg.init_programs.empty())
        throw std::invalid_argument("shc_llm_init needs --inits programs");
    if (cfg.method == Method::LlmGs && cfg.llm.fixture_dir.empty() && cfg.llm.endpoint.empty())
        throw std::invalid_argument("llm_gs needs a fixture dir or an endpoint");

    RunRecord record;
    record.task = task_spec(cfg.task).cli_name;
    record.method = method_name(cfg.method);
    record.variant_count = cfg.variant_count;
    record.budget = cfg.budget;
    record.hc_k = cfg.hc_k;
    record.population = cfg.population;
    record.prompt_mode = prompt_mode_name(cfg.prompt_mode);
    record.scheduler_variant = scheduler_variant_name(cfg.scheduler);
    record.seeds.resize(cfg.seeds.size());

    std::mutex checkpoint_mutex;
    auto worker_body = [&](std::size_t index) {
        record.seeds[index] = run_seed(cfg, cfg.seeds[index]);
        if (!cfg.output_dir.empty()) {
            // checkpoint partial results as seeds finish
            std::lock_guard<std::mutex> lock(checkpoint_mutex);
            fs::create_directories(cfg.output_dir);
            write_record(record, (fs::path(cfg.output_dir) / "record.json").string());
        }
    };

    int threads = std::clamp(cfg.threads, 1, static_cast<int>(cfg.seeds.size()));
    if (threads <= 1) {
        for (std::size_t i = 0; i < cfg.seeds.size(); ++i) worker_body(i);
    } else {
        std::atomic<std::size_t> next{0};
        auto pump = [&]() {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= cfg.seeds.size()) return;
                worker_body(i);
            }
        };
        std::vector<std::thread> pool;
        for (int t = 1; t < threads; ++t) pool.emplace_back(pump);
        pump();
        for (std::thread& t : pool) t.join();
    }

    if (!cfg.output_dir.empty()) {
        fs::create_directories(cfg.output_dir);
        write_record(record, (fs::path(cfg.output_dir) / "record.json").string());
    }
    return record;
}

namespace {

ordered_json seed_to_json(const SeedResult& s) {
    ordered_json j;
    j["seed"] = s.seed;
    ordered_json curve = ordered_json::array();
    for (const HistoryPoint& p : s.curve) curve.push_back({{"n", p.n}, {"best", p.best_return}});
    j["curve"] = std::move(curve);
    j["best_return"] = s.best_return;
    j["best_program"] = s.best_program;
    j["evaluations_used"] = s.evaluations_used;
    j["responses"] = s.responses;
    j["accepted_programs"] = s.accepted_programs;
    j["restarts"] = s.restarts;
    return j;
}

SeedResult seed_from_json(const ordered_json& j) {
    SeedResult s;
    s.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& p : j.at("curve"))
        s.curve.push_back({p.at("n").get<long>(), p.at("best").get<double>()});
    s.best_return = j.at("best_return").get<double>();
    s.best_program = j.at("best_program").get<std::string>();
    s.evaluations_used = j.at("evaluations_used").get<long>();
    s.responses = j.at("responses").get<int>();
    s.accepted_programs = j.at("accepted_programs").get<int>();
    s.restarts = j.at("restarts").get<int>();
    return s;
}

ordered_json record_to_json(const RunRecord& r) {
    ordered_json j;
    j["task"] = r.task;
    j["method"] = r.method;
    j["variant_count"] = r.variant_count;
    j["budget"] = r.budget;
    j["hc_k"] = r.hc_k;
    j["population"] = r.population;
    j["prompt_mode"] = r.prompt_mode;
    j["scheduler_variant"] = r.scheduler_variant;
    ordered_json seeds = ordered_json::array();
    for (const SeedResult& s : r.seeds) seeds.push_back(seed_to_json(s));
    j["seeds"] = std::move(seeds);
    return j;
}

// Best value of a step curve at position n (the last point with p.n <= n).
double curve_value_at(const std::vector<HistoryPoint>& curve, long n) {
    double v = curve.empty() ? 0.0 : curve.front().best_return;
    for (const HistoryPoint& p : curve) {
        if (p.n > n) break;
        v = p.best_return;
    }
    return v;
}

} // namespace

void write_record(const RunRecord& record, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << record_to_json(record).dump(2) << '\n';
}

RunRecord read_record(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    ordered_json j = ordered_json::parse(in);
    RunRecord r;
    r.task = j.at("task").get<std::string>();
    r.method = j.at("method").get<std::string>();
    r.variant_count = j.at("variant_count").get<int>();
    r.budget = j.at("budget").get<long>();
    r.hc_k = j.at("hc_k").get<long>();
    r.population = j.at("population").get<int>();
    r.prompt_mode = j.at("prompt_mode").get<std::string>();
    r.scheduler_variant = j.at("scheduler_variant").get<std::string>();
    for (const auto& s : j.at("seeds")) r.seeds.push_back(seed_from_json(s));
    return r;
}

void emit_results(const RunRecord& record, const std::string& format,
                  const std::string& out_dir) {
    fs::create_directories(out_dir);
    if (format == "json") {
        write_record(record, (fs::path(out_dir) / "record.json").string());
        return;
    }
    if (format != "csv") throw std::invalid_argument("unknown format: " + format);

    for (const SeedResult& s : record.seeds) {
        std::ofstream out(fs::path(out_dir) / ("seed_" + std::to_string(s.seed) + ".csv"));
        out << "seed,n,best_return\n";
        for (const HistoryPoint& p : s.curve)
            out << s.seed << ',' << p.n << ',' << p.best_return << '\n';
    }

    std::ofstream agg(fs::path(out_dir) / "aggregate.csv");
    agg << "n,mean_best_return,ci95_lo,ci95_hi\n";
    std::vector<long> grid = checkpoint_grid(record.budget);
    std::size_t count = record.seeds.size();
    for (long n : grid) {
        double mean = 0.0;
        for (const SeedResult& s : record.seeds) mean += curve_value_at(s.curve, n);
        mean /= static_cast<double>(count);
        double var = 0.0;
        for (const SeedResult& s : record.seeds) {
            double d = curve_value_at(s.curve, n) - mean;
            var += d * d;
        }
        double stderr_ = count > 1 ? std::sqrt(var / double(count - 1)) / std::sqrt(double(count))
                                   : 0.0;
        double half = 1.96 * stderr_;
        agg << n << ',' << mean << ',' << (mean - half) << ',' << (mean + half) << '\n';
    }
}

} // namespace karelgs
