#pragma once

#include "karelgs/interpreter.hpp"
#include "karelgs/world.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace karelgs {

enum class TaskId : std::uint8_t {
    StairClimber,
    Maze,
    FourCorners,
    TopOff,
    Harvester,
    CleanHouse,
    DoorKey,
    OneStroke,
    Seeder,
    Snake,
    PathFollow,
    WallAvoider
};
inline constexpr int kTaskCount = 12;

// The five prompt text fields of a task, used verbatim by the prompt builder.
struct TaskDescription {
    std::string name; // uppercase prompt name, e.g. "DOORKEY"
    std::string map_description;
    std::string initial_position;
    std::string task_goal;
    std::string task_reward;
};

struct TaskSpec {
    TaskId id{};
    const char* cli_name = "";
    int map_height = 0;
    int map_width = 0;
    double reward_lo = 0.0;
    double reward_hi = 1.0;
    TaskDescription description;
};

const std::vector<TaskSpec>& all_tasks();
const TaskSpec& task_spec(TaskId id);
// Case-insensitive lookup by CLI/prompt name; returns nullptr when unknown.
const TaskSpec* find_task(const std::string& name);

// Seeded variant generator; a pure function of (id, seed).
WorldState generate_variant(TaskId id, std::uint64_t seed);

// Task-side world mutation applied after agent actions (doors opening,
// visited cells turning to wall, snake body bookkeeping and marker respawn).
void hidden_dynamics(TaskId id, WorldState& state, const StepInfo& info);

// Combined reward + hidden dynamics step, the callback run_episode invokes.
StepResult task_step(TaskId id, WorldState& state, const StepInfo& info, double acc_return);

// Return already granted before the first action (OneStroke counts the start
// cell as visited; every other task starts at 0).
double task_initial_return(TaskId id, const WorldState& initial);

// Hooks bundle for run_episode.
RewardHooks task_hooks(TaskId id, const WorldState& initial);

// The CleanHouse room layout ('#' wall, '.' empty, 'A' agent start); also
// checked in under data/cleanhouse_map.txt.
const char* cleanhouse_layout();

} // namespace karelgs
