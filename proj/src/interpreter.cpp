#include "karelgs/interpreter.hpp"

#include "karelgs/text_util.hpp"

#include <sstream>
#include <unordered_map>

namespace karelgs {

const char* termination_name(Termination t) {
    switch (t) {
    case Termination::ProgramEnd: return "program_end";
    case Termination::RewardTerminal: return "reward_terminal";
    case Termination::Crash: return "crash";
    case Termination::StepLimit: return "step_limit";
    }
    return "?";
}

namespace {

// Preorder statement numbering, used only when recording traces.
void number_stmts(const StmtList& stmts, std::unordered_map<const Stmt*, int>& ids, int& next) {
    for (const Stmt& s : stmts) {
        ids[&s] = next++;
        if (const auto* w = std::get_if<WhileStmt>(&s.node)) {
            number_stmts(w->body, ids, next);
        } else if (const auto* r = std::get_if<RepeatStmt>(&s.node)) {
            number_stmts(r->body, ids, next);
        } else if (const auto* i = std::get_if<IfStmt>(&s.node)) {
            number_stmts(i->body, ids, next);
        } else if (const auto* ie = std::get_if<IfElseStmt>(&s.node)) {
            number_stmts(ie->then_body, ids, next);
            number_stmts(ie->else_body, ids, next);
        }
    }
}

class Executor {
public:
    Executor(const WorldState& initial, const RewardHooks& hooks, const EpisodeLimits& limits,
             const EpisodeRecording& recording)
        : hooks_(hooks), limits_(limits), recording_(recording) {
        traj_.total_return = hooks.initial_return;
        world_ = initial;
    }

    Trajectory run(const ProgramAst& ast) {
        std::unordered_map<const Stmt*, int> ids;
        if (recording_.steps) {
            int next = 0;
            number_stmts(ast.body, ids, next);
            ids_ = &ids;
        }
        exec_list(ast.body);
        return std::move(traj_);
    }

private:
    bool budget_left() {
        if (traj_.primitive_count >= limits_.max_primitive_steps ||
            traj_.action_count >= limits_.max_actions) {
            done_ = true;
            traj_.terminated_by = Termination::StepLimit;
            return false;
        }
        return true;
    }

    void record(TrajectoryStep::Kind kind, std::uint8_t payload, bool result, double delta,
                int node_id) {
        if (!recording_.steps) return;
        TrajectoryStep step;
        step.kind = kind;
        step.payload = payload;
        step.percept_result = result;
        step.reward_delta = delta;
        step.node_id = node_id;
        if (recording_.snapshots) step.snapshot = dump_world_window(world_);
        traj_.steps.push_back(std::move(step));
    }

    int node_id(const Stmt& s) const {
        if (!ids_) return -1;
        auto it = ids_->find(&s);
        return it == ids_->end() ? -1 : it->second;
    }

    bool query(const Condition& cond, const Stmt& owner) {
        if (done_ || !budget_left()) return false;
        ++traj_.primitive_count;
        bool raw = query_perception(world_, cond.perception);
        record(TrajectoryStep::Kind::Perception, static_cast<std::uint8_t>(cond.perception), raw,
               0.0, node_id(owner));
        return cond.negated ? !raw : raw;
    }

    void do_action(AgentAction action, const Stmt& owner) {
        if (done_ || !budget_left()) return;
        ++traj_.primitive_count;
        ++traj_.action_count;
        StepInfo info = apply_action_inplace(world_, action, hooks_.world_cfg);
        double delta = 0.0;
        if (hooks_.on_action) {
            StepResult res = hooks_.on_action(world_, info, traj_.total_return);
            if (res.override_total) {
                delta = res.total - traj_.total_return;
                traj_.total_return = res.total;
            } else {
                delta = res.delta;
                traj_.total_return += res.delta;
            }
            if (res.terminal) {
                done_ = true;
                traj_.terminated_by = Termination::RewardTerminal;
            }
        }
        record(TrajectoryStep::Kind::Action, static_cast<std::uint8_t>(action), false, delta,
               node_id(owner));
        if (!done_ && world_.crashed) {
            done_ = true;
            traj_.terminated_by = Termination::Crash;
        }
    }

    void exec_list(const StmtList& stmts) {
        for (const Stmt& s : stmts) {
            if (done_) return;
            exec_stmt(s);
        }
    }

    void exec_stmt(const Stmt& s) {
        if (const auto* a = std::get_if<ActionStmt>(&s.node)) {
            do_action(a->action, s);
        } else if (const auto* w = std::get_if<WhileStmt>(&s.node)) {
            while (!done_ && query(w->cond, s)) {
                exec_list(w->body);
            }
        } else if (const auto* r = std::get_if<RepeatStmt>(&s.node)) {
            for (int i = 0; i < r->count && !done_; ++i) exec_list(r->body);
        } else if (const auto* i = std::get_if<IfStmt>(&s.node)) {
            if (query(i->cond, s)) exec_list(i->body);
        } else if (const auto* ie = std::get_if<IfElseStmt>(&s.node)) {
            if (query(ie->cond, s)) exec_list(ie->then_body);
            else if (!done_) exec_list(ie->else_body);
        }
    }

    WorldState world_;
    const RewardHooks& hooks_;
    const EpisodeLimits& limits_;
    const EpisodeRecording& recording_;
    const std::unordered_map<const Stmt*, int>* ids_ = nullptr;
    Trajectory traj_;
    bool done_ = false;
};

} // namespace

Trajectory run_episode(const ProgramAst& ast, const WorldState& initial, const RewardHooks& hooks,
                       const EpisodeLimits& limits, const EpisodeRecording& recording) {
    return Executor(initial, hooks, limits, recording).run(ast);
}

std::string render_trajectory(const Trajectory& traj, int max_steps) {
    std::ostringstream out;
    int shown = 0;
    for (std::size_t i = 0; i < traj.steps.size(); ++i) {
        if (shown >= max_steps) break;
        const TrajectoryStep& step = traj.steps[i];
        out << "Step " << (i + 1) << ":\n";
        if (step.kind == TrajectoryStep::Kind::Action) {
            out << "Agent performs an action: "
                << action_name(static_cast<AgentAction>(step.payload)) << ".\n";
        } else {
            out << "Agent performs a perception: "
                << perception_name(static_cast<Perception>(step.payload)) << ". The result is "
                << (step.percept_result ? "True" : "False") << ".\n";
        }
        if (!step.snapshot.empty()) {
            out << "Partial state:\n" << step.snapshot;
        }
        out << "\n";
        ++shown;
    }
    if (static_cast<int>(traj.steps.size()) > max_steps) {
        out << "###" << (traj.steps.size() - max_steps) << " steps are truncated.###\n\n";
        out << "The total step number is " << traj.steps.size()
            << ", the latter ones are truncated.\n\n";
    }
    out << "The total reward is " << format_reward(traj.total_return) << "\n";
    return out.str();
}

} // namespace karelgs
