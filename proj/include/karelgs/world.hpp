#pragma once

#include "karelgs/task_aux.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace karelgs {

enum class Direction : std::uint8_t { North, East, South, West };

// (drow, dcol) displacement of one step in the given direction; row 0 is the
// top row, matching the textual state dump convention.
Coord direction_delta(Direction d);
Direction turn_left(Direction d);
Direction turn_right(Direction d);

enum class AgentAction : std::uint8_t { Move, TurnLeft, TurnRight, PutMarker, PickMarker };
inline constexpr int kAgentActionCount = 5;

enum class Perception : std::uint8_t {
    FrontIsClear,
    LeftIsClear,
    RightIsClear,
    MarkersPresent,
    NoMarkersPresent
};
inline constexpr int kPerceptionCount = 5;

const char* action_name(AgentAction a);
const char* perception_name(Perception p);

struct Cell {
    bool is_wall = false;
    std::uint8_t markers = 0;
    bool operator==(const Cell&) const = default;
};

struct WorldConfig {
    int marker_cap = 10;           // putMarker beyond this crashes
    bool invalid_pick_crashes = true; // pickMarker on an empty cell: crash vs no-op
};

struct WorldState {
    int width = 0;
    int height = 0;
    std::vector<Cell> cells; // row-major, height*width entries
    int agent_row = 0;
    int agent_col = 0;
    Direction agent_dir = Direction::East;
    bool crashed = false;
    TaskAux aux; // opaque to this module

    Cell& at(int row, int col) { return cells[static_cast<std::size_t>(row) * width + col]; }
    const Cell& at(int row, int col) const {
        return cells[static_cast<std::size_t>(row) * width + col];
    }
    bool in_bounds(int row, int col) const {
        return row >= 0 && row < height && col >= 0 && col < width;
    }
    bool is_wall(int row, int col) const { return !in_bounds(row, col) || at(row, col).is_wall; }

    bool operator==(const WorldState&) const = default;
};

// An empty rectangular world whose border cells are walls.
WorldState make_walled_world(int height, int width);

// What happened during the last applied action; the task hooks key off this.
struct StepInfo {
    AgentAction action{};
    int prev_row = 0;
    int prev_col = 0;
    Direction prev_dir = Direction::East;
    bool moved = false;       // agent translated to a new cell
    bool bounced = false;     // move was blocked by a wall (agent turned around)
    int blocked_row = -1;     // the wall cell that blocked the move, if bounced
    int blocked_col = -1;
    bool crashed = false;     // this action set state.crashed
};

// Applies the action in place and reports what happened. move advances one
// cell when the facing cell is not a wall; a blocked move rotates the agent
// 180 degrees instead. pickMarker on an empty cell and putMarker past the cap
// crash (subject to WorldConfig).
StepInfo apply_action_inplace(WorldState& state, AgentAction action,
                              const WorldConfig& cfg = WorldConfig{});

// Pure variant: returns the successor state, leaving the input untouched.
WorldState apply_action(const WorldState& state, AgentAction action,
                        const WorldConfig& cfg = WorldConfig{});

bool query_perception(const WorldState& state, Perception p);

// Textual dump, one row per line: "Wall(0, 0) ;<tab>Empty(0, 1) ; ...".
// Markers render as Marker(r, c, quantity=n), the agent cell as
// Agent(r, c, direction=(drow, dcol)).
std::string dump_world(const WorldState& state);

// 3x3 window centered on the agent, same cell format.
std::string dump_world_window(const WorldState& state, int radius = 1);

} // namespace karelgs
