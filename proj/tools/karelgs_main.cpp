#include "karelgs/evaluator.hpp"
#include "karelgs/experiment.hpp"
#include "karelgs/mutation.hpp"
#include "karelgs/parser.hpp"
#include "karelgs/prompts.hpp"
#include "karelgs/pydsl.hpp"
#include "karelgs/tasks.hpp"
#include "karelgs/text_util.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace karelgs;

std::string read_file_or_die(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "cannot read " << path << "\n";
        std::exit(1);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// "0..31" or "0,3,7" or "5"
std::vector<std::uint64_t> parse_seed_range(const std::string& text) {
    std::vector<std::uint64_t> seeds;
    if (std::size_t dots = text.find(".."); dots != std::string::npos) {
        std::uint64_t lo = std::stoull(text.substr(0, dots));
        std::uint64_t hi = std::stoull(text.substr(dots + 2));
        for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
        return seeds;
    }
    std::istringstream in(text);
    std::string part;
    while (std::getline(in, part, ',')) {
        if (!part.empty()) seeds.push_back(std::stoull(part));
    }
    return seeds;
}

TaskId task_or_die(const std::string& name) {
    const TaskSpec* spec = find_task(name);
    if (!spec) {
        std::cerr << "unknown task '" << name << "'; available:";
        for (const TaskSpec& t : all_tasks()) std::cerr << ' ' << t.cli_name;
        std::cerr << "\n";
        std::exit(1);
    }
    return spec->id;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Karel DSL program search"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value config file overriding defaults");

    // ---- run ----
    auto* run = app.add_subcommand("run", "run a search experiment");
    std::string run_task = "maze", run_method = "shc_random_init", run_seeds = "0";
    std::string run_fixtures, run_endpoint, run_out, run_inits_file, run_mode = "pythonic_dsl";
    std::string run_model = "gpt-4-turbo", run_api_key_env = "OPENAI_API_KEY";
    long run_budget = 1000000, run_k = 250, run_kstart = 32, run_kend = 2048;
    int run_c = 32, run_population = 32, run_threads = 1;
    std::string run_sched = "log-sin-log";
    run->add_option("--task", run_task, "task name (e.g. doorkey)");
    run->add_option("--method", run_method, "llm_gs | hc_fixed_k | shc_random_init | shc_llm_init");
    run->add_option("--seeds", run_seeds, "search seeds: 0..31 or 0,1,2");
    run->add_option("--budget", run_budget, "program-evaluation budget N");
    run->add_option("--c", run_c, "task variants per evaluation (C)");
    run->add_option("--k", run_k, "fixed neighborhood size for hc_fixed_k");
    run->add_option("--k-start", run_kstart, "scheduler K_start");
    run->add_option("--k-end", run_kend, "scheduler K_end");
    run->add_option("--scheduler", run_sched,
                    "scheduler variant interp-schedule-ratio, e.g. log-sin-log or lin-lin-lin");
    run->add_option("--fixtures", run_fixtures, "fixture directory of response .txt files");
    run->add_option("--endpoint", run_endpoint, "chat-completion endpoint URL (live mode)");
    run->add_option("--model", run_model, "model name for live requests");
    run->add_option("--api-key-env", run_api_key_env, "environment variable with the API key");
    run->add_option("--population", run_population, "initial programs requested per seed");
    run->add_option("--prompt-mode", run_mode, "pythonic_dsl | python_only | dsl_only");
    run->add_option("--inits", run_inits_file, "file of DSL programs (one per line) for shc_llm_init");
    run->add_option("--out", run_out, "output directory for record.json and curves");
    run->add_option("--threads", run_threads, "parallel seed jobs");

    // ---- emit ----
    auto* emit = app.add_subcommand("emit", "write CSV/JSON results from a record");
    std::string emit_record, emit_format = "csv", emit_out = ".";
    emit->add_option("--record", emit_record, "path to record.json")->required();
    emit->add_option("--format", emit_format, "csv | json");
    emit->add_option("--out", emit_out, "output directory");

    // ---- eval ----
    auto* eval = app.add_subcommand("eval", "evaluate a DSL program on a task");
    std::string eval_task = "maze", eval_program, eval_seeds = "0..31";
    bool eval_trace = false;
    int eval_trace_variant = 0;
    eval->add_option("--task", eval_task, "task name");
    eval->add_option("--program", eval_program, "file containing the DSL program")->required();
    eval->add_option("--variants", eval_seeds, "variant seeds (default 0..31)");
    eval->add_flag("--trace", eval_trace, "print the step trace of one variant");
    eval->add_option("--trace-variant", eval_trace_variant, "variant index to trace");

    // ---- dump ----
    auto* dump = app.add_subcommand("dump", "print a task variant's initial state");
    std::string dump_task = "doorkey";
    std::uint64_t dump_seed = 0;
    dump->add_option("--task", dump_task, "task name");
    dump->add_option("--seed", dump_seed, "variant seed");

    // ---- sample ----
    auto* sample = app.add_subcommand("sample", "print random programs from the grammar");
    std::uint64_t sample_seed = 0;
    int sample_count = 1;
    sample->add_option("--seed", sample_seed, "rng seed");
    sample->add_option("--count", sample_count, "how many programs");

    // ---- convert ----
    auto* convert = app.add_subcommand("convert", "convert restricted Python to DSL");
    std::string convert_file;
    convert->add_option("--python", convert_file, "file with the Python program")->required();

    // ---- prompt ----
    auto* prompt = app.add_subcommand("prompt", "render a prompt bundle");
    std::string prompt_task = "doorkey", prompt_mode_name_ = "pythonic_dsl";
    prompt->add_option("--task", prompt_task, "task name");
    prompt->add_option("--mode", prompt_mode_name_, "prompt mode");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            ExperimentConfig cfg;
            cfg.task = task_or_die(run_task);
            if (!parse_method(run_method, cfg.method)) {
                std::cerr << "unknown method '" << run_method << "'\n";
                return 1;
            }
            cfg.seeds = parse_seed_range(run_seeds);
            cfg.budget = run_budget;
            cfg.variant_count = run_c;
            cfg.hc_k = run_k;
            cfg.scheduler.k_start = run_kstart;
            cfg.scheduler.k_end = run_kend;
            cfg.scheduler.total_budget = run_budget;
            if (run_sched.size() == 11 || run_sched.size() == 10) {
                cfg.scheduler.interpolation = run_sched.substr(0, 3) == "log"
                                                  ? Interpolation::Logarithmic
                                                  : Interpolation::Linear;
                cfg.scheduler.schedule = run_sched.find("-sin") != std::string::npos
                                             ? Schedule::Sinusoidal
                                             : Schedule::Linear;
                cfg.scheduler.ratio = run_sched.rfind("log") == run_sched.size() - 3
                                          ? RatioKind::Logarithmic
                                          : RatioKind::Linear;
            }
            cfg.population = run_population;
            if (!parse_prompt_mode(run_mode, cfg.prompt_mode)) {
                std::cerr << "unknown prompt mode '" << run_mode << "'\n";
                return 1;
            }
            cfg.llm.fixture_dir = run_fixtures;
            cfg.llm.endpoint = run_endpoint;
            cfg.llm.model = run_model;
            cfg.llm.api_key_env = run_api_key_env;
            cfg.output_dir = run_out;
            cfg.threads = run_threads;
            if (!run_inits_file.empty()) {
                std::istringstream in(read_file_or_die(run_inits_file));
                std::string line;
                while (std::getline(in, line))
                    if (!line.empty()) cfg.init_programs.push_back(line);
            }
            RunRecord record = run_experiment(cfg);
            double mean = 0;
            for (const SeedResult& s : record.seeds) mean += s.best_return;
            mean /= double(record.seeds.size());
            std::cout << "task=" << record.task << " method=" << record.method
                      << " seeds=" << record.seeds.size() << " mean_best=" << mean << "\n";
            for (const SeedResult& s : record.seeds) {
                std::cout << "  seed " << s.seed << ": best " << format_reward(s.best_return)
                          << " after " << s.evaluations_used << " evaluations\n";
            }
            if (!run_out.empty()) {
                emit_results(record, "csv", run_out);
                std::cout << "results written to " << run_out << "\n";
            }
            return 0;
        }
        if (*emit) {
            RunRecord record = read_record(emit_record);
            emit_results(record, emit_format, emit_out);
            std::cout << "wrote " << emit_format << " results to " << emit_out << "\n";
            return 0;
        }
        if (*eval) {
            TaskId task = task_or_die(eval_task);
            ProgramAst ast = parse_program(read_file_or_die(eval_program));
            std::vector<std::uint64_t> seeds = parse_seed_range(eval_seeds);
            Evaluator ev(task, seeds);
            double mean = ev.evaluate(ast);
            std::cout << "mean return over " << seeds.size() << " variants: "
                      << format_reward(mean) << "\n";
            if (eval_trace) {
                const WorldState& init = ev.variant(eval_trace_variant);
                EpisodeRecording rec{true, true};
                Trajectory t =
                    run_episode(ast, init, task_hooks(task, init), ev.limits(), rec);
                std::cout << dump_world(init) << "\n" << render_trajectory(t) << "\n";
            }
            return 0;
        }
        if (*dump) {
            TaskId task = task_or_die(dump_task);
            std::cout << dump_world(generate_variant(task, dump_seed));
            return 0;
        }
        if (*sample) {
            RngStream rng(sample_seed);
            for (int i = 0; i < sample_count; ++i)
                std::cout << print_program(random_program(rng)) << "\n";
            return 0;
        }
        if (*convert) {
            RestrictedPyAst py = parse_restricted_python(read_file_or_die(convert_file));
            RepairResult rep = repair(convert_py_to_dsl(py));
            std::cout << rep.text << "\n";
            if (!rep.parses) {
                std::cerr << "warning: still not grammatical: " << rep.error << "\n";
                return 1;
            }
            return 0;
        }
        if (*prompt) {
            const TaskSpec* spec = find_task(prompt_task);
            if (!spec) {
                std::cerr << "unknown task\n";
                return 1;
            }
            PromptMode mode;
            if (!parse_prompt_mode(prompt_mode_name_, mode)) {
                std::cerr << "unknown prompt mode (revision modes need programmatic input)\n";
                return 1;
            }
            PromptBundle bundle = build_prompts(spec->description, mode);
            std::cout << "== system ==\n" << bundle.system << "\n== user ==\n" << bundle.user;
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
