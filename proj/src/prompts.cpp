#include "karelgs/prompts.hpp"

#include "karelgs/text_util.hpp"

#include <sstream>
#include <stdexcept>

namespace karelgs {

namespace {

const char* kEnvironmentPreamble =
    "You're currently navigating within a Karel environment, which is essentially a grid world. "
    "In this context, a \"world\" is referred to as a \"map.\" Within this map, there's an "
    "entity known as the \"agent,\" capable of movement, changing direction, as well as picking "
    "up and placing markers on the map. Additionally, there are obstacles called \"walls\" that "
    "impede the agent's progress; whenever the agent encounters a wall, it turns around. "
    "Furthermore, there are pre-existing \"markers\" scattered throughout the map at the "
    "beginning, though the agent has the ability to both pickup and place these markers as "
    "needed.\n";

const char* kPythonActionsPerceptions =
    "Here are the available actions for the agent:\n"
    "move(): Asks the agent to move forward one cell. The agent will instead turn left twice if "
    "a wall is blocking its way.\n"
    "turnLeft(): Asks the agent to rotate 90 degrees counterclockwise.\n"
    "turnRight(): Asks the agent to rotate 90 degrees clockwise.\n"
    "pickMarker(): Asks the agent to pick up one marker from the current cell.\n"
    "putMarker(): Asks the agent to put down one marker on the current cell.\n"
    "\n"
    "Here are the available perceptions of the agent:\n"
    "frontIsClear(): Returns True if there is no wall in front of the agent.\n"
    "leftIsClear(): Returns True if there is no wall on the agent's left.\n"
    "rightIsClear(): Returns True if there is no wall on the agent's right.\n"
    "markersPresent(): Returns True if there exist markers on the current cell.\n"
    "noMarkersPresent(): Returns True if there is no marker on the current cell.\n";

const char* kPythonLimitations =
    "There are some limitations for the Python program:\n"
    "- do not define other functions besides run()\n"
    "- do not call other functions\n"
    "- do not define variables\n"
    "- do not use True, False, break, continue, return, ==, !=, elif, or, and\n";

const char* kConversionRules =
    "Python to Karel dsl conversion\n"
    "1. \"def run(): s\" to \"DEF run m( s m)\"\n"
    "2. \"while b: s\" to \"WHILE c( b c) w( s w)\"\n"
    "3. \"if b: s\" to \"IF c( b c) i( s i)\"\n"
    "4. \"if b: s else: s\" to \"IFELSE c( b c) i( s i) ELSE e( s e)\"\n"
    "5. \"for i in range(n): s\" to \"REPEAT R=n r( s r)\"\n"
    "6. \"not h\" to \"not c( h c)\"\n"
    "7. \"frontIsClear()\" to \"frontIsClear\"\n"
    "8. \"leftIsClear()\" to \"leftIsClear\"\n"
    "9. \"rightIsClear()\" to \"rightIsClear\"\n"
    "10. \"markersPresent()\" to \"markersPresent\"\n"
    "11. \"noMarkersPresent()\" to \"noMarkersPresent\"\n"
    "12. \"move()\" to \"move\"\n"
    "13. \"turnLeft()\" to \"turnLeft\"\n"
    "14. \"turnRight()\" to \"turnRight\"\n"
    "15. \"putMarker()\" to \"putMarker\"\n"
    "16. \"pickMarker()\" to \"pickMarker\"\n";

const char* kDslActionsPerceptions =
    "Here are the available actions for the agent:\n"
    "move: Asks the agent to move forward one cell. The agent will instead turn left twice if a "
    "wall is blocking its way.\n"
    "turnLeft: Asks the agent to rotate 90 degrees counterclockwise.\n"
    "turnRight: Asks the agent to rotate 90 degrees clockwise.\n"
    "pickMarker: Asks the agent to pick up one marker from the current cell.\n"
    "putMarker: Asks the agent to put down one marker on the current cell.\n"
    "\n"
    "Here are the available perceptions of the agent:\n"
    "frontIsClear: Returns True if there is no wall in front of the agent.\n"
    "leftIsClear: Returns True if there is no wall on the agent's left.\n"
    "rightIsClear: Returns True if there is no wall on the agent's right.\n"
    "markersPresent: Returns True if there exist markers on the current cell.\n"
    "noMarkersPresent: Returns True if there is no marker on the current cell.\n";

const char* kDslGrammar =
    "This is the production role of the domain-specific language of the Karel environment.\n"
    "Program p := DEF run m( s m)\n"
    "Statement s := WHILE c( b c) w( s w) | IF c( b c) i( s i) | IFELSE c( b c) i( s i) ELSE "
    "e( s e) | REPEAT R=n r( s r) | s s | a\n"
    "Condition b := h | not c( h c)\n"
    "Number n := 0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18, 19\n"
    "Perception h := frontIsClear | leftIsClear | rightIsClear | markersPresent | "
    "noMarkersPresent\n"
    "Action a := move | turnLeft | turnRight | putMarker | pickMarker\n";

std::string pythonic_dsl_system() {
    std::string s = kEnvironmentPreamble;
    s += "\nYour objective is to generate the appropriate Python program based on a given task "
         "name and description. This Python program will encompass actions enabling the agent "
         "to engage with the environment, alongside perceptions facilitating the agent's "
         "recognition of the environment's dynamics.\n\n";
    s += kPythonActionsPerceptions;
    s += "\n";
    s += kPythonLimitations;
    s += "\n";
    s += kConversionRules;
    return s;
}

std::string python_only_system() {
    std::string s = kEnvironmentPreamble;
    s += "\nYour objective is to generate the appropriate Python program based on a given task "
         "name and description. This Python program will encompass actions enabling the agent "
         "to engage with the environment, alongside perceptions facilitating the agent's "
         "recognition of the environment's dynamics.\n\n";
    s += kPythonActionsPerceptions;
    s += "\n";
    s += kPythonLimitations;
    return s;
}

std::string dsl_only_system() {
    std::string s = kEnvironmentPreamble;
    s += "\nYour objective is to generate the appropriate Karel dsl program based on a given "
         "task name and description. This Karel dsl program will encompass actions enabling "
         "the agent to engage with the environment, alongside perceptions facilitating the "
         "agent's recognition of the environment's dynamics.\n\n";
    s += kDslActionsPerceptions;
    s += "\n";
    s += kDslGrammar;
    return s;
}

void require_field(const std::string& value, const char* placeholder) {
    if (value.empty())
        throw std::invalid_argument(std::string("missing task field: ") + placeholder);
}

std::string task_fields(const TaskDescription& task) {
    require_field(task.name, "<<Task Name>>");
    require_field(task.map_description, "<<Map Description>>");
    require_field(task.initial_position, "<<Initial Position>>");
    require_field(task.task_goal, "<<Task Goal>>");
    require_field(task.task_reward, "<<Task Reward>>");
    std::string s;
    s += "Task name: " + task.name + "\n";
    s += "Task map: " + task.map_description + "\n";
    s += "Task agent position: " + task.initial_position + "\n";
    s += "Task goal: " + task.task_goal + "\n";
    s += "Task return: " + task.task_reward + "\n";
    return s;
}

std::string base_user_prompt(const TaskDescription& task, PromptMode mode) {
    std::string s = "I'll provide you with the task name and description.\n\n";
    s += task_fields(task);
    s += "\n";
    switch (mode) {
    case PromptMode::PythonicDsl:
        s += "1. Generate 1 simple and short Python program to tackle the task, avoid using "
             "comments.\n"
             "2. Convert the Python program to the Karel dsl program.\n";
        break;
    case PromptMode::PythonOnly:
        s += "1. Generate 1 simple and short Python program to tackle the task, avoid using "
             "comments.\n";
        break;
    case PromptMode::DslOnly:
        s += "1. Generate 1 simple and short Karel dsl program to tackle the task, avoid using "
             "comments.\n";
        break;
    default: break;
    }
    return s;
}

const RevisionContext& require_revision(const RevisionContext* rev, const char* what) {
    if (!rev) throw std::invalid_argument(std::string("missing revision context: ") + what);
    return *rev;
}

std::string regenerate_user(const TaskDescription& task, const RevisionContext& rev) {
    if (rev.programs.empty()) throw std::invalid_argument("missing revision field: programs");
    std::string s = "I'll provide you with the task name, task description, and the programs "
                    "you generated last time.\n\n";
    s += task_fields(task);
    s += "\nThese are the programs you generated last time, all of these programs cannot yield "
         "perfect performance.\n";
    for (std::size_t i = 0; i < rev.programs.size(); ++i) {
        s += "\nProgram " + std::to_string(i + 1) + ":\n" + rev.programs[i] + "\n";
    }
    s += "\n1. Generate a Python program that is not identical to any of the previous programs "
         "to tackle the task, and avoid using comments.\n"
         "2. Convert the Python program to the Karel dsl program.\n";
    return s;
}

std::string regenerate_with_reward_user(const TaskDescription& task,
                                        const RevisionContext& rev) {
    if (rev.programs.empty()) throw std::invalid_argument("missing revision field: programs");
    if (rev.rewards.size() != rev.programs.size())
        throw std::invalid_argument("missing revision field: rewards");
    std::string s = "I'll provide you with the task name, task description, and the programs "
                    "rewards pairs sorted by their evaluation rewards from 32 task variants.\n\n";
    s += task_fields(task);
    s += "\nProgram reward pairs sorted by their evaluation rewards:\n";
    for (std::size_t i = 0; i < rev.programs.size(); ++i) {
        s += "\nProgram " + std::to_string(i + 1) + ":\n" + rev.programs[i] + "\n";
        s += "\nreward:\n" + format_reward(rev.rewards[i]) + "\n";
    }
    s += "\n1. Depending on this information, examine the program pattern that the highest "
         "score programs process, but the lowest score programs do not.\n"
         "2. Generate 1 simple and short Python program according to the pattern to tackle the "
         "task, avoid using comment.\n"
         "3. Convert the Python program to the Karel dsl program.\n";
    return s;
}

std::string trace_user(const TaskDescription& task, const RevisionContext& rev,
                       bool with_program_lines) {
    if (rev.program.empty()) throw std::invalid_argument("missing revision field: program");
    if (rev.initial_state.empty())
        throw std::invalid_argument("missing revision field: initial_state");
    if (rev.trajectory.empty()) throw std::invalid_argument("missing revision field: trajectory");
    std::string s =
        "I'll provide you with the code you developed previously, with the goal of refining it. "
        "To guide your revision, you'll receive the specific task name and a description. Since "
        "there are 32 different versions of the task that share the same objective but differ "
        "by random seeds, I will identify the specific variant where the performance of the "
        "program is most lacking. Additionally, you'll get the initial state of the task, the "
        "code, and a detailed trajectory demonstrating how the code operates within this "
        "particular scenario. This trajectory will detail each action step-by-step";
    if (with_program_lines) s += ", indicate which section of your code is active,";
    s += " and show a localized snapshot of the environment (a 3x3 area centered on the agent) "
         "during execution. Rewards received by the agent will also be shown during these "
         "steps.\n\n";
    s += task_fields(task);
    s += "\nInitial state:\n" + rev.initial_state;
    s += "\nProgram:\n" + rev.program + "\n";
    s += "\nThe average reward on 32 task variants is:\n" + format_reward(rev.average_reward) +
         "\n";
    s += "\nTrajectory:\n\n" + rev.trajectory;
    s += "\n1. Depending on this information, please analyze the reason why the program failed "
         "to achieve 1.0 on this task variant and generate a new strategy to solve this task.\n"
         "2. Generate 1 simple and short Python program according to the new strategy to tackle "
         "the task, avoid using comment.\n"
         "3. Convert the Python program to the Karel dsl program.\n";
    return s;
}

} // namespace

const char* prompt_mode_name(PromptMode mode) {
    switch (mode) {
    case PromptMode::PythonicDsl: return "pythonic_dsl";
    case PromptMode::PythonOnly: return "python_only";
    case PromptMode::DslOnly: return "dsl_only";
    case PromptMode::Regenerate: return "regenerate";
    case PromptMode::RegenerateWithReward: return "regenerate_with_reward";
    case PromptMode::AgentTrace: return "agent_trace";
    case PromptMode::AgentProgramTrace: return "agent_program_trace";
    }
    return "?";
}

bool parse_prompt_mode(const std::string& name, PromptMode& mode) {
    for (int i = 0; i <= static_cast<int>(PromptMode::AgentProgramTrace); ++i) {
        if (name == prompt_mode_name(static_cast<PromptMode>(i))) {
            mode = static_cast<PromptMode>(i);
            return true;
        }
    }
    return false;
}

PromptBundle build_prompts(const TaskDescription& task, PromptMode mode,
                           const RevisionContext* revision) {
    PromptBundle bundle;
    bundle.mode = mode;
    switch (mode) {
    case PromptMode::PythonicDsl:
        bundle.system = pythonic_dsl_system();
        bundle.user = base_user_prompt(task, mode);
        break;
    case PromptMode::PythonOnly:
        bundle.system = python_only_system();
        bundle.user = base_user_prompt(task, mode);
        break;
    case PromptMode::DslOnly:
        bundle.system = dsl_only_system();
        bundle.user = base_user_prompt(task, mode);
        break;
    case PromptMode::Regenerate:
        bundle.system = pythonic_dsl_system();
        bundle.user = regenerate_user(task, require_revision(revision, "programs"));
        break;
    case PromptMode::RegenerateWithReward:
        bundle.system = pythonic_dsl_system();
        bundle.user =
            regenerate_with_reward_user(task, require_revision(revision, "programs/rewards"));
        break;
    case PromptMode::AgentTrace:
        bundle.system = pythonic_dsl_system();
        bundle.user = trace_user(task, require_revision(revision, "trace"), false);
        break;
    case PromptMode::AgentProgramTrace:
        bundle.system = pythonic_dsl_system();
        bundle.user = trace_user(task, require_revision(revision, "trace"), true);
        break;
    }
    return bundle;
}

std::string render_annotated_trajectory(const Trajectory& traj, const std::string& python_source,
                                        const std::vector<int>& node_lines, int max_steps) {
    std::vector<std::string> lines;
    {
        std::istringstream in(python_source);
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            lines.push_back(line);
        }
    }
    std::ostringstream out;
    int shown = 0;
    for (std::size_t i = 0; i < traj.steps.size() && shown < max_steps; ++i, ++shown) {
        const TrajectoryStep& step = traj.steps[i];
        out << "Step " << (i + 1) << ":\n";
        out << "Program:\n";
        int active_line = -1;
        if (step.node_id >= 0 && step.node_id < static_cast<int>(node_lines.size()))
            active_line = node_lines[static_cast<std::size_t>(step.node_id)];
        for (std::size_t ln = 0; ln < lines.size(); ++ln) {
            out << lines[ln];
            if (static_cast<int>(ln + 1) == active_line)
                out << "  # Currently executing this line";
            out << "\n";
        }
        out << "\n";
        if (step.kind == TrajectoryStep::Kind::Action) {
            out << "Agent performs an action: "
                << action_name(static_cast<AgentAction>(step.payload)) << ".\n";
        } else {
            out << "Agent performs a perception: "
                << perception_name(static_cast<Perception>(step.payload)) << ". The result is "
                << (step.percept_result ? "True" : "False") << ".\n";
        }
        if (!step.snapshot.empty()) out << "Partial state:\n" << step.snapshot;
        out << "\n";
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
