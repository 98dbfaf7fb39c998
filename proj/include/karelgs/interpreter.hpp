#pragma once

#include "karelgs/ast.hpp"
#include "karelgs/world.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace karelgs {

struct EpisodeLimits {
    // actions + perception queries; bounds condition-only loops
    long max_primitive_steps = 10000;
    int max_actions = 200;
};

enum class Termination : std::uint8_t { ProgramEnd, RewardTerminal, Crash, StepLimit };

const char* termination_name(Termination t);

// Result of the task hook after one agent action.
struct StepResult {
    double delta = 0.0;
    bool terminal = false;
    // When set, the episode return becomes `total` instead of acc + delta
    // (used by tasks whose misuse rule forces the whole return to -1).
    bool override_total = false;
    double total = 0.0;
};

// Reward callback invoked after every agent action. It may mutate the world
// (task-side hidden dynamics such as doors opening or cells turning to wall).
using RewardCallback = std::function<StepResult(WorldState&, const StepInfo&, double acc_return)>;

struct RewardHooks {
    WorldConfig world_cfg{};
    double initial_return = 0.0; // return already granted at episode start
    RewardCallback on_action;    // may be empty (no task rewards)
};

struct TrajectoryStep {
    enum class Kind : std::uint8_t { Action, Perception } kind{};
    std::uint8_t payload = 0;   // AgentAction or Perception
    bool percept_result = false;
    double reward_delta = 0.0;
    int node_id = -1;           // preorder statement index in the AST
    std::string snapshot;       // 3x3 window dump, when recording snapshots
};

struct Trajectory {
    std::vector<TrajectoryStep> steps; // empty unless recording was requested
    double total_return = 0.0;
    Termination terminated_by = Termination::ProgramEnd;
    int action_count = 0;
    long primitive_count = 0;
};

struct EpisodeRecording {
    bool steps = false;
    bool snapshots = false;
};

// Executes the program operationally against a copy of `initial`: WHILE
// re-evaluates its condition before each iteration, REPEAT runs its body
// exactly n times, IF/IFELSE branch once per encounter. After each action the
// reward hook runs; the episode halts on program end, terminal reward, crash,
// or limit exhaustion (a normal termination reason, not an error).
Trajectory run_episode(const ProgramAst& ast, const WorldState& initial, const RewardHooks& hooks,
                       const EpisodeLimits& limits = EpisodeLimits{},
                       const EpisodeRecording& recording = EpisodeRecording{});

// Renders a recorded trajectory in the textual trace format:
//   Step 1:
//   Agent performs a perception: noMarkersPresent. The result is True.
//   Partial state:
//   ...
// `max_steps` truncates long traces with a "are truncated" note.
std::string render_trajectory(const Trajectory& traj, int max_steps = 48);

} // namespace karelgs
