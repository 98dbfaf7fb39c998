#include "karelgs/world.hpp"

#include <sstream>

namespace karelgs {

Coord direction_delta(Direction d) {
    switch (d) {
    case Direction::North: return {-1, 0};
    case Direction::East: return {0, 1};
    case Direction::South: return {1, 0};
    case Direction::West: return {0, -1};
    }
    return {0, 0};
}

Direction turn_left(Direction d) {
    switch (d) {
    case Direction::North: return Direction::West;
    case Direction::West: return Direction::South;
    case Direction::South: return Direction::East;
    case Direction::East: return Direction::North;
    }
    return d;
}

Direction turn_right(Direction d) {
    switch (d) {
    case Direction::North: return Direction::East;
    case Direction::East: return Direction::South;
    case Direction::South: return Direction::West;
    case Direction::West: return Direction::North;
    }
    return d;
}

const char* action_name(AgentAction a) {
    switch (a) {
    case AgentAction::Move: return "move";
    case AgentAction::TurnLeft: return "turnLeft";
    case AgentAction::TurnRight: return "turnRight";
    case AgentAction::PutMarker: return "putMarker";
    case AgentAction::PickMarker: return "pickMarker";
    }
    return "?";
}

const char* perception_name(Perception p) {
    switch (p) {
    case Perception::FrontIsClear: return "frontIsClear";
    case Perception::LeftIsClear: return "leftIsClear";
    case Perception::RightIsClear: return "rightIsClear";
    case Perception::MarkersPresent: return "markersPresent";
    case Perception::NoMarkersPresent: return "noMarkersPresent";
    }
    return "?";
}

WorldState make_walled_world(int height, int width) {
    WorldState w;
    w.height = height;
    w.width = width;
    w.cells.assign(static_cast<std::size_t>(height) * width, Cell{});
    for (int r = 0; r < height; ++r) {
        for (int c = 0; c < width; ++c) {
            if (r == 0 || c == 0 || r == height - 1 || c == width - 1) w.at(r, c).is_wall = true;
        }
    }
    return w;
}

StepInfo apply_action_inplace(WorldState& state, AgentAction action, const WorldConfig& cfg) {
    StepInfo info;
    info.action = action;
    info.prev_row = state.agent_row;
    info.prev_col = state.agent_col;
    info.prev_dir = state.agent_dir;

    switch (action) {
    case AgentAction::Move: {
        Coord d = direction_delta(state.agent_dir);
        int nr = state.agent_row + d.row;
        int nc = state.agent_col + d.col;
        if (state.is_wall(nr, nc)) {
            // blocked: turn left twice, stay in place
            state.agent_dir = turn_left(turn_left(state.agent_dir));
            info.bounced = true;
            info.blocked_row = nr;
            info.blocked_col = nc;
        } else {
            state.agent_row = nr;
            state.agent_col = nc;
            info.moved = true;
        }
        break;
    }
    case AgentAction::TurnLeft:
        state.agent_dir = turn_left(state.agent_dir);
        break;
    case AgentAction::TurnRight:
        state.agent_dir = turn_right(state.agent_dir);
        break;
    case AgentAction::PutMarker: {
        Cell& cell = state.at(state.agent_row, state.agent_col);
        if (cell.markers >= cfg.marker_cap) {
            state.crashed = true;
            info.crashed = true;
        } else {
            ++cell.markers;
        }
        break;
    }
    case AgentAction::PickMarker: {
        Cell& cell = state.at(state.agent_row, state.agent_col);
        if (cell.markers == 0) {
            if (cfg.invalid_pick_crashes) {
                state.crashed = true;
                info.crashed = true;
            }
        } else {
            --cell.markers;
        }
        break;
    }
    }
    return info;
}

WorldState apply_action(const WorldState& state, AgentAction action, const WorldConfig& cfg) {
    WorldState next = state;
    apply_action_inplace(next, action, cfg);
    return next;
}

bool query_perception(const WorldState& state, Perception p) {
    switch (p) {
    case Perception::FrontIsClear: {
        Coord d = direction_delta(state.agent_dir);
        return !state.is_wall(state.agent_row + d.row, state.agent_col + d.col);
    }
    case Perception::LeftIsClear: {
        Coord d = direction_delta(turn_left(state.agent_dir));
        return !state.is_wall(state.agent_row + d.row, state.agent_col + d.col);
    }
    case Perception::RightIsClear: {
        Coord d = direction_delta(turn_right(state.agent_dir));
        return !state.is_wall(state.agent_row + d.row, state.agent_col + d.col);
    }
    case Perception::MarkersPresent:
        return state.at(state.agent_row, state.agent_col).markers >= 1;
    case Perception::NoMarkersPresent:
        return state.at(state.agent_row, state.agent_col).markers == 0;
    }
    return false;
}

namespace {

void append_cell(std::ostringstream& out, const WorldState& s, int r, int c) {
    if (r == s.agent_row && c == s.agent_col) {
        Coord d = direction_delta(s.agent_dir);
        out << "Agent(" << r << ", " << c << ", direction=(" << d.row << ", " << d.col << "))";
    } else if (s.at(r, c).is_wall) {
        out << "Wall(" << r << ", " << c << ")";
    } else if (s.at(r, c).markers > 0) {
        out << "Marker(" << r << ", " << c << ", quantity=" << int(s.at(r, c).markers) << ")";
    } else {
        out << "Empty(" << r << ", " << c << ")";
    }
    out << " ;";
}

} // namespace

std::string dump_world(const WorldState& state) {
    std::ostringstream out;
    for (int r = 0; r < state.height; ++r) {
        for (int c = 0; c < state.width; ++c) {
            if (c > 0) out << '\t';
            append_cell(out, state, r, c);
        }
        out << '\n';
    }
    return out.str();
}

std::string dump_world_window(const WorldState& state, int radius) {
    std::ostringstream out;
    for (int r = state.agent_row - radius; r <= state.agent_row + radius; ++r) {
        bool first = true;
        for (int c = state.agent_col - radius; c <= state.agent_col + radius; ++c) {
            if (!state.in_bounds(r, c)) continue;
            if (!first) out << '\t';
            append_cell(out, state, r, c);
            first = false;
        }
        out << '\n';
    }
    return out.str();
}

} // namespace karelgs
