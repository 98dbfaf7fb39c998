#pragma once

#include "karelgs/interpreter.hpp"
#include "karelgs/tasks.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace karelgs {

enum class PromptMode : std::uint8_t {
    PythonicDsl,
    PythonOnly,
    DslOnly,
    Regenerate,
    RegenerateWithReward,
    AgentTrace,
    AgentProgramTrace
};

const char* prompt_mode_name(PromptMode mode);
// "pythonic_dsl", "python_only", ... ; returns false for unknown names.
bool parse_prompt_mode(const std::string& name, PromptMode& mode);

struct PromptBundle {
    PromptMode mode = PromptMode::PythonicDsl;
    std::string system;
    std::string user;
};

// Extra material embedded by the revision modes.
struct RevisionContext {
    std::vector<std::string> programs;   // Regenerate / RegenerateWithReward
    std::vector<double> rewards;         // RegenerateWithReward, parallel to programs
    std::string initial_state;           // trace modes: full state dump
    std::string program;                 // trace modes: the program under revision
    double average_reward = 0.0;         // trace modes
    std::string trajectory;              // trace modes: pre-rendered step trace
};

// Fills the five task placeholders of the mode's user template and pairs it
// with the mode's system prompt. Throws std::invalid_argument naming the
// placeholder when a task field (or required revision field) is missing.
PromptBundle build_prompts(const TaskDescription& task, PromptMode mode,
                           const RevisionContext* revision = nullptr);

// Step trace for the agent-and-program-trace mode: each step repeats the
// Python source with "# Currently executing this line" on the active line.
// `node_lines` maps preorder statement ids to 1-based Python lines.
std::string render_annotated_trajectory(const Trajectory& traj, const std::string& python_source,
                                        const std::vector<int>& node_lines, int max_steps = 48);

} // namespace karelgs
