#include "karelgs/tasks.hpp"

#include "karelgs/rng.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <cmath>
#include <cstring>
#include <sstream>
#include <stdexcept>

namespace karelgs {

namespace {

constexpr double kEps = 1e-9;

std::vector<TaskSpec> build_registry() {
    std::vector<TaskSpec> tasks;
    auto add = [&](TaskId id, const char* cli, int h, int w, double lo, double hi,
                   TaskDescription d) {
        TaskSpec t;
        t.id = id;
        t.cli_name = cli;
        t.map_height = h;
        t.map_width = w;
        t.reward_lo = lo;
        t.reward_hi = hi;
        t.description = std::move(d);
        tasks.push_back(std::move(t));
    };

    add(TaskId::StairClimber, "stairclimber", 12, 12, -1.0, 1.0,
        {"STAIRCLIMBERSPARSE",
         "The map is a 12x12 grid surrounded by walls with stairs formed by walls and a marker "
         "is randomly initialized on the stairs as a goal.",
         "The agent starts on a random position on the stairs facing east.",
         "The goal of the agent is to reach a marker that is also randomly initialized on the "
         "stairs.",
         "If the agent reaches the marker, the agent receives 1 as an episodic return and 0 "
         "otherwise. If the agent moves to an invalid position, i.e. outside the contour of the "
         "stairs, the episode terminates with a -1 return."});
    add(TaskId::Maze, "maze", 8, 8, 0.0, 1.0,
        {"MAZESPARSE",
         "The map is a complex 8x8 grid surrounded by walls and a random marker is placed on an "
         "empty cell as a goal.",
         "The agent starts on a random empty cell of the map facing east.",
         "The goal of the agent is to reach the goal marker.",
         "If the agent reaches the marker, the agent receives 1 as an episodic return and 0 "
         "otherwise."});
    add(TaskId::FourCorners, "fourcorners", 12, 12, 0.0, 1.0,
        {"FOURCORNERS", "The map is an empty 12x12 grid surrounded by walls.",
         "The agent starts on a random cell on the bottom row of the map facing east.",
         "The goal of the agent is to place one marker in each corner of the map.",
         "Return is given by the number of corners with one marker divided by 4."});
    add(TaskId::TopOff, "topoff", 12, 12, -1.0, 1.0,
        {"TOPOFF",
         "The map is a 12x12 grid surrounded by walls with markers randomly placed on the bottom "
         "row of the map.",
         "The agent starts on the bottom left cell of the map facing east.",
         "The goal of the agent is to place one extra marker on top of every marker on the map.",
         "Return is given by the number of markers that have been topped off divided by the "
         "total number of markers. Picking up the marker will terminate the episode with a -1 "
         "return."});
    add(TaskId::Harvester, "harvester", 8, 8, 0.0, 1.0,
        {"HARVESTER",
         "The map is a 8x8 grid surrounded by walls that starts with a marker on each cell.",
         "The agent starts on a random cell on the bottom row of the map facing east.",
         "The goal of the agent is to pick up every marker on the map.",
         "Return is given by the number of picked-up markers divided by the total number of "
         "markers."});
    add(TaskId::CleanHouse, "cleanhouse", 14, 22, 0.0, 1.0,
        {"CLEANHOUSE",
         "The map is a complex 14x22 grid made of many connected rooms and is surrounded by "
         "walls. There are ten markers randomly placed adjacent to the walls.",
         "The agent starts on a fixed cell facing south.",
         "The goal of the agent is to pick up every marker on the map.",
         "Return is given by the number of picked-up markers divided by the total number of "
         "markers."});
    add(TaskId::DoorKey, "doorkey", 8, 8, 0.0, 1.0,
        {"DOORKEY",
         "The map is a 8x8 grid surrounded by walls that is vertically split into two chambers. "
         "The left chamber is 6x3 grid and the right chamber is 6x2 grid. There is a marker "
         "placed randomly on the left chamber as a key, and another marker placed randomly on "
         "the right chamber as a goal.",
         "The agent starts on a random cell on the left chamber facing east.",
         "The goal of the agent is to pick up a marker on the left chamber, which opens a door "
         "connecting both chambers. Allow the agent to reach and put a marker on the goal "
         "marker.",
         "Picking up the first marker yields a 0.5 reward, and putting a marker on the goal "
         "marker yields an additional 0.5."});
    add(TaskId::OneStroke, "onestroke", 8, 8, 0.0, 1.0,
        {"ONESTROKE", "The map is given by an empty 8x8 grid surrounded by walls.",
         "The agent starts on a random cell of the map facing east.",
         "The goal of the agent is to visit every grid cell without repeating. Visited cells "
         "become a wall that terminates the episode upon touching.",
         "Return is given by the number of visited cells divided by the total number of empty "
         "cells in the initial state."});
    add(TaskId::Seeder, "seeder", 8, 8, 0.0, 1.0,
        {"SEEDER", "The map is given by an empty 8x8 grid surrounded by walls.",
         "The agent starts on a random cell of the map facing east.",
         "The goal of the agent is to place one marker in every empty cell of the map.",
         "Return is given by the number of cells with one marker divided by the total number of "
         "empty cells in the initial state."});
    add(TaskId::Snake, "snake", 8, 8, 0.0, 1.0,
        {"SNAKE",
         "The map is given by an empty 8x8 grid surrounded by walls with a marker randomly "
         "placed on the map.",
         "The agent starts on a random cell of the map facing east.",
         "The agent acts like the head of a snake, whose body grows each time a marker is "
         "reached. (No need to pick it up.) Every time a marker is reached, the body of the "
         "agent grows one marker. The goal of the agent is to touch the marker on the map "
         "without colliding with the snake's body, which terminates the episode. Each time the "
         "marker is reached, it is placed on a random cell, until 20 markers are reached.",
         "Return is given by the number of reached markers divided by 20."});
    add(TaskId::PathFollow, "pathfollow", 8, 8, -1.0, 1.0,
        {"PATHFOLLOW",
         "The map is given by a 8x8 grid surrounded by walls. There is a rugged ascending "
         "markers line that starts from the bottom left cell and randomly grows either north or "
         "to the east until it reaches the top right cell. Resulting in a rugged markers line "
         "connecting the bottom left cell and the top right cell.",
         "The agent starts on the bottom left cell of the map facing north.",
         "The goal of the agent is to collect every marker on that rugged markers line without "
         "leaving the rugged markers line two cells away.",
         "Return is given by the number of picked-up markers divided by the total number of "
         "markers. Placing any marker or leaving the rugged markers line two cells away will "
         "have a negative return as -1.0 and terminate the episode."});
    add(TaskId::WallAvoider, "wallavoider", 8, 5, -1.0, 1.0,
        {"WALLAVOIDER", "The map is given by an empty 8x5 grid surrounded by walls.",
         "The agent starts on a random cell of the map facing random directions.",
         "The goal of the agent is to place exactly one marker in every interior cell of the "
         "map, which refers to the cells that are not adjacent to any wall.",
         "Return is given by the number of interior cells with exactly one marker divided by "
         "the total number of interior cells. Picking up the marker, putting more than one "
         "marker on one cell, or putting any marker on the cell adjacent to any wall will "
         "terminate the episode with a -1 return."});
    return tasks;
}

// ---------------------------------------------------------------------------
// generators

// Interior bounds helper: interior cells are 1..h-2 x 1..w-2.
int interior_rows(const TaskSpec& t) { return t.map_height - 2; }
int interior_cols(const TaskSpec& t) { return t.map_width - 2; }

// StairClimber geometry: two-column steps rising from the bottom-left. Column
// pair k (cols 2k+1, 2k+2) has its walkable tread on row 10-k; everything
// below the tread is wall. The walkable contour is the treads plus the riser
// corner above the right tread cell of each step.
struct StairGeometry {
    std::vector<Coord> treads;  // stair cells in climb order (agent/goal spots)
    std::vector<Coord> contour; // cells the agent may occupy without penalty
};

StairGeometry stair_geometry() {
    StairGeometry g;
    for (int k = 0; k < 5; ++k) {
        int tread_row = 10 - k;
        g.treads.push_back({tread_row, 2 * k + 1});
        g.treads.push_back({tread_row, 2 * k + 2});
    }
    g.contour = g.treads;
    for (int k = 0; k < 4; ++k) {
        g.contour.push_back({10 - k - 1, 2 * k + 2}); // riser corner
    }
    return g;
}

WorldState gen_stairclimber(std::uint64_t seed) {
    RngStream rng(seed);
    WorldState w = make_walled_world(12, 12);
    for (int c = 1; c <= 10; ++c) {
        int k = (c - 1) / 2;
        for (int r = 11 - k; r <= 10; ++r) w.at(r, c).is_wall = true;
    }
    StairGeometry g = stair_geometry();
    // agent on a tread, goal on a tread strictly above (smaller row)
    int agent_idx = rng.uniform_int(0, 7); // rows 10..7; row 6 has nothing above
    Coord agent = g.treads[agent_idx];
    std::vector<Coord> above;
    for (const Coord& t : g.treads)
        if (t.row < agent.row) above.push_back(t);
    Coord goal = above[static_cast<std::size_t>(rng.uniform_int(0, int(above.size()) - 1))];
    w.agent_row = agent.row;
    w.agent_col = agent.col;
    w.agent_dir = Direction::East;
    w.at(goal.row, goal.col).markers = 1;
    w.aux.goal_cell = goal;
    w.aux.path_cells = g.contour;
    return w;
}

// Maze: recursive-backtracker carving on the 3x3 lattice of odd interior
// coordinates; the result is a tree, so a wall-follower visits every cell.
WorldState gen_maze(std::uint64_t seed) {
    RngStream rng(seed);
    WorldState w = make_walled_world(8, 8);
    for (int r = 1; r <= 6; ++r)
        for (int c = 1; c <= 6; ++c) w.at(r, c).is_wall = true;
    auto lattice = [](int i, int j) { return Coord{2 * i + 1, 2 * j + 1}; };
    bool visited[3][3] = {};
    std::vector<std::pair<int, int>> stack;
    int si = rng.uniform_int(0, 2), sj = rng.uniform_int(0, 2);
    visited[si][sj] = true;
    w.at(lattice(si, sj).row, lattice(si, sj).col).is_wall = false;
    stack.push_back({si, sj});
    while (!stack.empty()) {
        auto [i, j] = stack.back();
        int order[4] = {0, 1, 2, 3};
        for (int k = 3; k > 0; --k) std::swap(order[k], order[rng.uniform_int(0, k)]);
        static constexpr int di[4] = {-1, 1, 0, 0};
        static constexpr int dj[4] = {0, 0, -1, 1};
        bool advanced = false;
        for (int k = 0; k < 4 && !advanced; ++k) {
            int ni = i + di[order[k]], nj = j + dj[order[k]];
            if (ni < 0 || ni > 2 || nj < 0 || nj > 2 || visited[ni][nj]) continue;
            visited[ni][nj] = true;
            Coord a = lattice(i, j), b = lattice(ni, nj);
            w.at(b.row, b.col).is_wall = false;
            w.at((a.row + b.row) / 2, (a.col + b.col) / 2).is_wall = false;
            stack.push_back({ni, nj});
            advanced = true;
        }
        if (!advanced) stack.pop_back();
    }
    std::vector<Coord> open;
    for (int r = 1; r <= 6; ++r)
        for (int c = 1; c <= 6; ++c)
            if (!w.at(r, c).is_wall) open.push_back({r, c});
    int ai = rng.uniform_int(0, int(open.size()) - 1);
    int gi = rng.uniform_int(0, int(open.size()) - 2);
    if (gi >= ai) ++gi; // goal distinct from agent
    w.agent_row = open[ai].row;
    w.agent_col = open[ai].col;
    w.agent_dir = Direction::East;
    w.at(open[gi].row, open[gi].col).markers = 1;
    w.aux.goal_cell = open[gi];
    return w;
}

WorldState gen_fourcorners(std::uint64_t seed) {
    RngStream rng(seed);
    WorldState w = make_walled_world(12, 12);
    w.agent_row = 10;
    w.agent_col = rng.uniform_int(1, 10);
    w.agent_dir = Direction::East;
    return w;
}

void snapshot_initial_markers(WorldState& w) {
    w.aux.initial_markers.resize(w.cells.size());
    int total = 0;
    for (std::size_t i = 0; i < w.cells.size(); ++i) {
        w.aux.initial_markers[i] = w.cells[i].markers;
        total += w.cells[i].markers;
    }
    w.aux.initial_marker_total = total;
}

WorldState gen_topoff(std::uint64_t seed) {
    RngStream rng(seed);
    WorldState w = make_walled_world(12, 12);
    int placed = 0;
    while (placed == 0) {
        for (int c = 1; c <= 10; ++c) {
            if (rng.uniform() < 0.25) {
                w.at(10, c).markers = 1;
                ++placed;
            }
        }
    }
    w.agent_row = 10;
    w.agent_col = 1;
    w.agent_dir = Direction::East;
    snapshot_initial_markers(w);
    return w;
}

WorldState gen_harvester(std::uint64_t seed) {
    RngStream rng(seed);
    WorldState w = make_walled_world(8, 8);
    for (int r = 1; r <= 6; ++r)
        for (int c = 1; c <= 6; ++c) w.at(r, c).markers = 1;
    w.agent_row = 6;
    w.agent_col = rng.uniform_int(1, 6);
    w.agent_dir = Direction::East;
    snapshot_initial_markers(w);
    return w;
}

constexpr const char* kCleanHouseLayout =
    "######################\n"
    "#..........#.........#\n"
    "#..........#A........#\n"
    "#....#####.#.........#\n"
    "#....#.....#....##.###\n"
    "#....#.....#....#....#\n"
    "#....#.....#....#....#\n"
    "#.####...###....#....#\n"
    "#.#....#.##.....##.###\n"
    "#.#....#....#........#\n"
    "#...#..#....#........#\n"
    "#...#..#....#...##...#\n"
    "#...#.......#...##...#\n"
    "######################\n";

WorldState gen_cleanhouse(std::uint64_t seed) {
    RngStream rng(seed);
    WorldState w = make_walled_world(14, 22);
    int r = 0, c = 0;
    for (const char* p = kCleanHouseLayout; *p; ++p) {
        if (*p == '\n') {
            ++r;
            c = 0;
            continue;
        }
        if (*p == '#') w.at(r, c).is_wall = true;
        else w.at(r, c).is_wall = false;
        if (*p == 'A') {
            w.agent_row = r;
            w.agent_col = c;
        }
        ++c;
    }
    w.agent_dir = Direction::South;
    // ten markers on distinct empty cells adjacent to a wall
    std::vector<Coord> candidates;
    for (int rr = 1; rr < 13; ++rr) {
        for (int cc = 1; cc < 21; ++cc) {
            if (w.at(rr, cc).is_wall) continue;
            if (rr == w.agent_row && cc == w.agent_col) continue;
            bool near_wall = w.at(rr - 1, cc).is_wall || w.at(rr + 1, cc).is_wall ||
                             w.at(rr, cc - 1).is_wall || w.at(rr, cc + 1).is_wall;
            if (near_wall) candidates.push_back({rr, cc});
        }
    }
    for (int k = 0; k < 10; ++k) {
        int i = rng.uniform_int(k, int(candidates.size()) - 1);
        std::swap(candidates[k], candidates[static_cast<std::size_t>(i)]);
        w.at(candidates[k].row, candidates[k].col).markers = 1;
    }
    snapshot_initial_markers(w);
    return w;
}

WorldState gen_doorkey(std::uint64_t seed) {
    RngStream rng(seed);
    WorldState w = make_walled_world(8, 8);
    for (int r = 1; r <= 6; ++r) w.at(r, 4).is_wall = true; // chamber divider
    Coord door{rng.uniform_int(1, 6), 4};
    Coord key{rng.uniform_int(1, 6), rng.uniform_int(1, 3)};
    Coord agent = key;
    while (agent == key) agent = {rng.uniform_int(1, 6), rng.uniform_int(1, 3)};
    Coord goal{rng.uniform_int(1, 6), rng.uniform_int(5, 6)};
    w.at(key.row, key.col).markers = 1;
    w.at(goal.row, goal.col).markers = 1;
    w.agent_row = agent.row;
    w.agent_col = agent.col;
    w.agent_dir = Direction::East;
    w.aux.key_cell = key;
    w.aux.goal_cell = goal;
    w.aux.door_cell = door;
    return w;
}

WorldState gen_open_8x8_agent(std::uint64_t seed, RngStream& rng) {
    (void)seed;
    WorldState w = make_walled_world(8, 8);
    w.agent_row = rng.uniform_int(1, 6);
    w.agent_col = rng.uniform_int(1, 6);
    w.agent_dir = Direction::East;
    return w;
}

WorldState gen_onestroke(std::uint64_t seed) {
    RngStream rng(seed);
    WorldState w = gen_open_8x8_agent(seed, rng);
    w.aux.visited_count = 1; // the start cell counts as visited
    return w;
}

WorldState gen_seeder(std::uint64_t seed) {
    RngStream rng(seed);
    return gen_open_8x8_agent(seed, rng);
}

WorldState gen_snake(std::uint64_t seed) {
    RngStream rng(seed);
    WorldState w = gen_open_8x8_agent(seed, rng);
    Coord target = {w.agent_row, w.agent_col};
    while (target.row == w.agent_row && target.col == w.agent_col)
        target = {rng.uniform_int(1, 6), rng.uniform_int(1, 6)};
    w.at(target.row, target.col).markers = 1;
    w.aux.target_cell = target;
    w.aux.respawn_rng = rng.split();
    return w;
}

WorldState gen_pathfollow(std::uint64_t seed) {
    RngStream rng(seed);
    WorldState w = make_walled_world(8, 8);
    Coord pos{6, 1}; // bottom-left interior cell
    std::vector<Coord> path{pos};
    while (!(pos.row == 1 && pos.col == 6)) {
        bool north;
        if (pos.row == 1) north = false;
        else if (pos.col == 6) north = true;
        else north = rng.coin();
        if (north) --pos.row;
        else ++pos.col;
        path.push_back(pos);
    }
    for (const Coord& p : path) w.at(p.row, p.col).markers = 1;
    w.agent_row = 6;
    w.agent_col = 1;
    w.agent_dir = Direction::North;
    w.aux.path_cells = path;
    snapshot_initial_markers(w);
    return w;
}

WorldState gen_wallavoider(std::uint64_t seed) {
    RngStream rng(seed);
    WorldState w = make_walled_world(8, 5);
    w.agent_row = rng.uniform_int(1, 6);
    w.agent_col = rng.uniform_int(1, 3);
    w.agent_dir = static_cast<Direction>(rng.uniform_int(0, 3));
    return w;
}

// ---------------------------------------------------------------------------
// reward + hidden dynamics

bool is_border_wall(const WorldState& w, int r, int c) {
    return r <= 0 || c <= 0 || r >= w.height - 1 || c >= w.width - 1;
}

std::size_t cell_index(const WorldState& w, int r, int c) {
    return static_cast<std::size_t>(r) * w.width + c;
}

// Change in the deficit score (fraction of the initially placed markers
// missing from their cells) caused by the last pick/put.
double deficit_delta(const WorldState& w, const StepInfo& info) {
    if (info.action != AgentAction::PickMarker && info.action != AgentAction::PutMarker)
        return 0.0;
    if (info.crashed) return 0.0;
    std::size_t idx = cell_index(w, info.prev_row, info.prev_col);
    int init = w.aux.initial_markers.empty() ? 0 : w.aux.initial_markers[idx];
    if (init == 0 || w.aux.initial_marker_total == 0) return 0.0;
    int after = w.cells[idx].markers;
    int before = after + (info.action == AgentAction::PickMarker ? 1 : -1);
    int deficit_before = std::max(0, init - before);
    int deficit_after = std::max(0, init - after);
    return double(deficit_after - deficit_before) / w.aux.initial_marker_total;
}

bool on_contour(const TaskAux& aux, int r, int c) {
    for (const Coord& p : aux.path_cells)
        if (p.row == r && p.col == c) return true;
    return false;
}

StepResult step_stairclimber(WorldState& w, const StepInfo& info, double) {
    StepResult res;
    if (!info.moved) return res;
    if (w.agent_row == w.aux.goal_cell.row && w.agent_col == w.aux.goal_cell.col) {
        res.delta = 1.0;
        res.terminal = true;
        return res;
    }
    if (!on_contour(w.aux, w.agent_row, w.agent_col)) {
        res.override_total = true;
        res.total = -1.0;
        res.terminal = true;
    }
    return res;
}

StepResult step_maze(WorldState& w, const StepInfo& info, double) {
    StepResult res;
    if (info.moved && w.agent_row == w.aux.goal_cell.row && w.agent_col == w.aux.goal_cell.col) {
        res.delta = 1.0;
        res.terminal = true;
    }
    return res;
}

StepResult step_fourcorners(WorldState& w, const StepInfo& info, double acc) {
    StepResult res;
    if (info.crashed) return res;
    if (info.action != AgentAction::PutMarker && info.action != AgentAction::PickMarker)
        return res;
    int r = info.prev_row, c = info.prev_col;
    bool corner = (r == 1 || r == w.height - 2) && (c == 1 || c == w.width - 2);
    if (!corner) return res;
    int after = w.at(r, c).markers;
    int before = after + (info.action == AgentAction::PickMarker ? 1 : -1);
    res.delta = ((after == 1 ? 0.25 : 0.0) - (before == 1 ? 0.25 : 0.0));
    if (std::abs(acc + res.delta - 1.0) < kEps) res.terminal = true;
    return res;
}

StepResult step_topoff(WorldState& w, const StepInfo& info, double acc) {
    StepResult res;
    if (info.crashed) return res;
    if (info.action == AgentAction::PickMarker) {
        // a successful pick (invalid picks already crashed)
        res.override_total = true;
        res.total = -1.0;
        res.terminal = true;
        return res;
    }
    if (info.action != AgentAction::PutMarker) return res;
    std::size_t idx = cell_index(w, info.prev_row, info.prev_col);
    if (w.aux.initial_markers[idx] == 0) return res;
    int after = w.cells[idx].markers;
    double unit = 1.0 / w.aux.initial_marker_total;
    if (after == 2) res.delta = unit;       // topped off
    else if (after == 3) res.delta = -unit; // over-topped, no longer counts
    if (res.delta > 0 && std::abs(acc + res.delta - 1.0) < kEps) res.terminal = true;
    return res;
}

StepResult step_marker_sweep(WorldState& w, const StepInfo& info, double acc) {
    StepResult res;
    res.delta = deficit_delta(w, info);
    if (res.delta > 0 && std::abs(acc + res.delta - 1.0) < kEps) res.terminal = true;
    return res;
}

StepResult step_doorkey(WorldState& w, const StepInfo& info, double) {
    StepResult res;
    if (info.crashed) return res;
    TaskAux& aux = w.aux;
    if (info.action == AgentAction::PickMarker && !aux.key_picked &&
        info.prev_row == aux.key_cell.row && info.prev_col == aux.key_cell.col) {
        res.delta = 0.5;
        return res; // door opens in hidden_dynamics
    }
    if (info.action == AgentAction::PutMarker && !aux.goal_done &&
        info.prev_row == aux.goal_cell.row && info.prev_col == aux.goal_cell.col &&
        w.at(aux.goal_cell.row, aux.goal_cell.col).markers >= 2) {
        aux.goal_done = true;
        res.delta = 0.5;
        res.terminal = true;
    }
    return res;
}

StepResult step_onestroke(WorldState& w, const StepInfo& info, double) {
    StepResult res;
    int total = 36; // interior cells of the 8x8 map
    if (info.moved) {
        res.delta = 1.0 / total;
        if (w.aux.visited_count + 1 >= total) res.terminal = true;
    } else if (info.bounced && !is_border_wall(w, info.blocked_row, info.blocked_col)) {
        // touched a visited cell
        res.terminal = true;
    }
    return res;
}

StepResult step_seeder(WorldState& w, const StepInfo& info, double acc) {
    StepResult res;
    if (info.crashed) return res;
    if (info.action != AgentAction::PutMarker && info.action != AgentAction::PickMarker)
        return res;
    int total = 36;
    int after = w.at(info.prev_row, info.prev_col).markers;
    int before = after + (info.action == AgentAction::PickMarker ? 1 : -1);
    res.delta = ((after == 1 ? 1.0 : 0.0) - (before == 1 ? 1.0 : 0.0)) / total;
    if (res.delta > 0 && std::abs(acc + res.delta - 1.0) < kEps) res.terminal = true;
    return res;
}

StepResult step_snake(WorldState& w, const StepInfo& info, double) {
    StepResult res;
    TaskAux& aux = w.aux;
    if (info.bounced && !is_border_wall(w, info.blocked_row, info.blocked_col)) {
        res.terminal = true; // collided with the body
        return res;
    }
    if (info.moved && w.agent_row == aux.target_cell.row && w.agent_col == aux.target_cell.col) {
        res.delta = 1.0 / 20.0;
        if (aux.markers_reached + 1 >= 20) res.terminal = true;
    }
    return res;
}

StepResult step_pathfollow(WorldState& w, const StepInfo& info, double acc) {
    StepResult res;
    if (info.action == AgentAction::PutMarker && !info.crashed) {
        res.override_total = true;
        res.total = -1.0;
        res.terminal = true;
        return res;
    }
    if (info.moved) {
        int best = 1 << 20;
        for (const Coord& p : w.aux.path_cells) {
            int d = std::max(std::abs(p.row - w.agent_row), std::abs(p.col - w.agent_col));
            best = std::min(best, d);
        }
        if (best >= 2) {
            res.override_total = true;
            res.total = -1.0;
            res.terminal = true;
            return res;
        }
    }
    res.delta = deficit_delta(w, info);
    if (res.delta > 0 && std::abs(acc + res.delta - 1.0) < kEps) res.terminal = true;
    return res;
}

bool wallavoider_inner(const WorldState& w, int r, int c) {
    if (w.at(r, c).is_wall) return false;
    return !(w.at(r - 1, c).is_wall || w.at(r + 1, c).is_wall || w.at(r, c - 1).is_wall ||
             w.at(r, c + 1).is_wall);
}

StepResult step_wallavoider(WorldState& w, const StepInfo& info, double acc) {
    StepResult res;
    if (info.crashed) return res;
    if (info.action == AgentAction::PickMarker) {
        res.override_total = true;
        res.total = -1.0;
        res.terminal = true;
        return res;
    }
    if (info.action != AgentAction::PutMarker) return res;
    int r = info.prev_row, c = info.prev_col;
    int after = w.at(r, c).markers;
    if (!wallavoider_inner(w, r, c) || after >= 2) {
        res.override_total = true;
        res.total = -1.0;
        res.terminal = true;
        return res;
    }
    res.delta = 0.25; // 4 interior cells on the 8x5 map
    if (std::abs(acc + res.delta - 1.0) < kEps) res.terminal = true;
    return res;
}

} // namespace

const std::vector<TaskSpec>& all_tasks() {
    static const std::vector<TaskSpec> registry = build_registry();
    return registry;
}

const TaskSpec& task_spec(TaskId id) { return all_tasks()[static_cast<std::size_t>(id)]; }

namespace {
std::string to_lower(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char ch : s) out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    return out;
}
} // namespace

const TaskSpec* find_task(const std::string& name) {
    std::string lower = to_lower(name);
    for (const TaskSpec& t : all_tasks()) {
        if (lower == t.cli_name || lower == to_lower(t.description.name)) return &t;
    }
    return nullptr;
}

WorldState generate_variant(TaskId id, std::uint64_t seed) {
    switch (id) {
    case TaskId::StairClimber: return gen_stairclimber(seed);
    case TaskId::Maze: return gen_maze(seed);
    case TaskId::FourCorners: return gen_fourcorners(seed);
    case TaskId::TopOff: return gen_topoff(seed);
    case TaskId::Harvester: return gen_harvester(seed);
    case TaskId::CleanHouse: return gen_cleanhouse(seed);
    case TaskId::DoorKey: return gen_doorkey(seed);
    case TaskId::OneStroke: return gen_onestroke(seed);
    case TaskId::Seeder: return gen_seeder(seed);
    case TaskId::Snake: return gen_snake(seed);
    case TaskId::PathFollow: return gen_pathfollow(seed);
    case TaskId::WallAvoider: return gen_wallavoider(seed);
    }
    throw std::invalid_argument("unknown task id");
}

void hidden_dynamics(TaskId id, WorldState& w, const StepInfo& info) {
    TaskAux& aux = w.aux;
    switch (id) {
    case TaskId::DoorKey:
        if (info.action == AgentAction::PickMarker && !info.crashed && !aux.key_picked &&
            info.prev_row == aux.key_cell.row && info.prev_col == aux.key_cell.col) {
            aux.key_picked = true;
            w.at(aux.door_cell.row, aux.door_cell.col).is_wall = false;
        }
        break;
    case TaskId::OneStroke:
        if (info.moved) {
            w.at(info.prev_row, info.prev_col).is_wall = true;
            ++aux.visited_count;
        }
        break;
    case TaskId::Snake: {
        if (!info.moved) break;
        Coord prev{info.prev_row, info.prev_col};
        if (aux.snake_pending_growth > 0) {
            aux.snake_body.insert(aux.snake_body.begin(), prev);
            w.at(prev.row, prev.col).is_wall = true;
            --aux.snake_pending_growth;
        } else if (!aux.snake_body.empty()) {
            Coord tail = aux.snake_body.back();
            aux.snake_body.pop_back();
            w.at(tail.row, tail.col).is_wall = false;
            aux.snake_body.insert(aux.snake_body.begin(), prev);
            w.at(prev.row, prev.col).is_wall = true;
        }
        if (w.agent_row == aux.target_cell.row && w.agent_col == aux.target_cell.col) {
            ++aux.markers_reached;
            ++aux.snake_pending_growth;
            Cell& cell = w.at(aux.target_cell.row, aux.target_cell.col);
            if (cell.markers > 0) --cell.markers;
            aux.target_cell = {-1, -1};
            if (aux.markers_reached < 20) {
                std::vector<Coord> free_cells;
                for (int r = 1; r <= 6; ++r) {
                    for (int c = 1; c <= 6; ++c) {
                        if (w.at(r, c).is_wall || w.at(r, c).markers > 0) continue;
                        if (r == w.agent_row && c == w.agent_col) continue;
                        free_cells.push_back({r, c});
                    }
                }
                if (!free_cells.empty()) {
                    int i = aux.respawn_rng.uniform_int(0, int(free_cells.size()) - 1);
                    Coord next = free_cells[static_cast<std::size_t>(i)];
                    w.at(next.row, next.col).markers = 1;
                    aux.target_cell = next;
                }
            }
        }
        break;
    }
    default: break;
    }
}

StepResult task_step(TaskId id, WorldState& w, const StepInfo& info, double acc) {
    StepResult res;
    switch (id) {
    case TaskId::StairClimber: res = step_stairclimber(w, info, acc); break;
    case TaskId::Maze: res = step_maze(w, info, acc); break;
    case TaskId::FourCorners: res = step_fourcorners(w, info, acc); break;
    case TaskId::TopOff: res = step_topoff(w, info, acc); break;
    case TaskId::Harvester: res = step_marker_sweep(w, info, acc); break;
    case TaskId::CleanHouse: res = step_marker_sweep(w, info, acc); break;
    case TaskId::DoorKey: res = step_doorkey(w, info, acc); break;
    case TaskId::OneStroke: res = step_onestroke(w, info, acc); break;
    case TaskId::Seeder: res = step_seeder(w, info, acc); break;
    case TaskId::Snake: res = step_snake(w, info, acc); break;
    case TaskId::PathFollow: res = step_pathfollow(w, info, acc); break;
    case TaskId::WallAvoider: res = step_wallavoider(w, info, acc); break;
    }
    hidden_dynamics(id, w, info);
    return res;
}

double task_initial_return(TaskId id, const WorldState&) {
    if (id == TaskId::OneStroke) return 1.0 / 36.0; // start cell counts as visited
    return 0.0;
}

RewardHooks task_hooks(TaskId id, const WorldState& initial) {
    RewardHooks hooks;
    hooks.initial_return = task_initial_return(id, initial);
    hooks.on_action = [id](WorldState& w, const StepInfo& info, double acc) {
        return task_step(id, w, info, acc);
    };
    return hooks;
}

const char* cleanhouse_layout() { return kCleanHouseLayout; }

} // namespace karelgs
