#pragma once

#include "karelgs/rng.hpp"

#include <cstdint>
#include <vector>

namespace karelgs {

struct Coord {
    int row = -1;
    int col = -1;
    bool operator==(const Coord&) const = default;
};

// Per-task extension state carried inside WorldState. The grid module never
// reads or writes any of this; only the task hooks do.
struct TaskAux {
    // DoorKey
    bool key_picked = false;
    bool goal_done = false;
    Coord key_cell;
    Coord goal_cell;
    Coord door_cell;

    // OneStroke (visited cells are materialized as walls; this is the count)
    int visited_count = 0;

    // Snake
    std::vector<Coord> snake_body; // body[0] is the segment right behind the head
    int snake_pending_growth = 0;
    int markers_reached = 0;
    Coord target_cell;
    RngStream respawn_rng;

    // Marker-collection tasks (TopOff, Harvester, CleanHouse, PathFollow):
    // marker count of each cell in the initial state, row-major. Empty for
    // tasks that do not need it.
    std::vector<std::uint8_t> initial_markers;
    int initial_marker_total = 0;

    // PathFollow / StairClimber: the cells the agent is allowed to stray near
    // (path cells resp. stair contour), in walk order where meaningful.
    std::vector<Coord> path_cells;

    bool operator==(const TaskAux&) const = default;
};

} // namespace karelgs
