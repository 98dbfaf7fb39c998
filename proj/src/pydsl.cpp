#include "karelgs/pydsl.hpp"

#include "karelgs/parser.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <sstream>

namespace karelgs {

namespace {

// ---------------------------------------------------------------------------
// restricted Python parsing

struct SourceLine {
    int indent = 0;
    std::string text; // stripped of indentation, comments, trailing blanks
    int number = 0;   // 1-based
};

std::string strip(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

std::vector<SourceLine> significant_lines(const std::string& text) {
    std::vector<SourceLine> lines;
    std::istringstream in(text);
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
        ++number;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        if (std::size_t hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
        int indent = 0;
        std::size_t i = 0;
        for (; i < raw.size(); ++i) {
            if (raw[i] == ' ') ++indent;
            else if (raw[i] == '\t') indent += 4;
            else break;
        }
        std::string body = strip(raw.substr(i));
        if (body.empty()) continue;
        lines.push_back({indent, std::move(body), number});
    }
    return lines;
}

bool starts_with(const std::string& s, const std::string& prefix) {
    return s.size() >= prefix.size() && s.compare(0, prefix.size(), prefix) == 0;
}

std::optional<AgentAction> action_by_name(const std::string& n) {
    for (int i = 0; i < kAgentActionCount; ++i) {
        if (n == action_name(static_cast<AgentAction>(i))) return static_cast<AgentAction>(i);
    }
    return std::nullopt;
}

std::optional<Perception> perception_by_name(const std::string& n) {
    for (int i = 0; i < kPerceptionCount; ++i) {
        if (n == perception_name(static_cast<Perception>(i))) return static_cast<Perception>(i);
    }
    return std::nullopt;
}

// "name()" -> name; rejects calls with arguments.
std::optional<std::string> parse_nullary_call(const std::string& s) {
    std::size_t open = s.find('(');
    if (open == std::string::npos || s.back() != ')') return std::nullopt;
    std::string inner = strip(s.substr(open + 1, s.size() - open - 2));
    if (!inner.empty()) return std::nullopt;
    std::string name = strip(s.substr(0, open));
    if (name.empty()) return std::nullopt;
    return name;
}

std::string strip_outer_parens(std::string s) {
    s = strip(s);
    while (s.size() >= 2 && s.front() == '(' && s.back() == ')') {
        int depth = 0;
        bool wraps = true;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] == '(') ++depth;
            else if (s[i] == ')') {
                --depth;
                if (depth == 0 && i + 1 != s.size()) {
                    wraps = false;
                    break;
                }
            }
        }
        if (!wraps) break;
        s = strip(s.substr(1, s.size() - 2));
    }
    return s;
}

void check_forbidden_operators(const std::string& cond, int line) {
    static constexpr const char* kForbidden[] = {"==", "!=", " and ", " or "};
    for (const char* op : kForbidden) {
        if (cond.find(op) != std::string::npos)
            throw WhitelistViolation(std::string("forbidden operator '") + strip(op) + "'", line);
    }
}

PyCondition parse_py_condition(std::string text, int line) {
    PyCondition cond;
    cond.line = line;
    text = strip_outer_parens(text);
    check_forbidden_operators(text, line);
    if (starts_with(text, "not ") || starts_with(text, "not(")) {
        cond.negated = true;
        text = strip_outer_parens(strip(text.substr(3)));
    }
    if (text == "True") {
        cond.kind = PyCondition::Kind::TrueLiteral;
        return cond;
    }
    if (text == "False") {
        cond.kind = PyCondition::Kind::FalseLiteral;
        return cond;
    }
    if (auto call = parse_nullary_call(text)) {
        if (auto p = perception_by_name(*call)) {
            cond.kind = PyCondition::Kind::Perception;
            cond.perception = *p;
            return cond;
        }
        if (action_by_name(*call))
            throw WhitelistViolation("action '" + *call + "' used as a condition", line);
        throw WhitelistViolation("call to undefined function '" + *call + "'", line);
    }
    throw WhitelistViolation("unsupported condition '" + text + "'", line);
}

class PyParser {
public:
    explicit PyParser(std::vector<SourceLine> lines) : lines_(std::move(lines)) {}

    RestrictedPyAst parse() {
        if (lines_.empty()) throw WhitelistViolation("empty program", 1);
        const SourceLine& head = lines_[0];
        if (head.indent != 0) throw PyIndentationError("unexpected indent", head.number);
        std::string rest = match_def(head);
        RestrictedPyAst ast;
        ast.def_line = head.number;
        ++pos_;
        if (!rest.empty()) {
            ast.body.push_back(parse_simple(rest, head.number));
            if (pos_ != lines_.size())
                throw WhitelistViolation("code after a single-line run()", lines_[pos_].number);
            return ast;
        }
        ast.body = parse_block(head.indent);
        if (pos_ != lines_.size())
            throw WhitelistViolation("code outside run()", lines_[pos_].number);
        if (ast.body.empty()) throw WhitelistViolation("empty run() body", head.number);
        return ast;
    }

private:
    std::string match_def(const SourceLine& line) {
        std::string t = line.text;
        if (!starts_with(t, "def "))
            throw WhitelistViolation("expected 'def run():'", line.number);
        std::size_t colon = t.find(':');
        if (colon == std::string::npos)
            throw WhitelistViolation("missing ':' after def", line.number);
        std::string header = strip(t.substr(4, colon - 4));
        if (header != "run()")
            throw WhitelistViolation("function definition other than run()", line.number);
        return strip(t.substr(colon + 1));
    }

    PyStmt parse_simple(const std::string& text, int line) {
        check_forbidden_operators(" " + text + " ", line);
        for (const char* kw : {"break", "continue", "return", "pass"}) {
            if (text == kw || starts_with(text, std::string(kw) + " "))
                throw WhitelistViolation(std::string("'") + kw + "'", line);
        }
        if (text.find('=') != std::string::npos)
            throw WhitelistViolation("variable definition", line);
        if (auto call = parse_nullary_call(text)) {
            if (auto a = action_by_name(*call)) {
                PyStmt s;
                s.kind = PyStmt::Kind::Call;
                s.action = *a;
                s.line = line;
                return s;
            }
            if (perception_by_name(*call))
                throw WhitelistViolation("perception call used as a statement", line);
            if (*call == "run") throw WhitelistViolation("recursive call to run()", line);
            throw WhitelistViolation("call to undefined function '" + *call + "'", line);
        }
        throw WhitelistViolation("unsupported statement '" + text + "'", line);
    }

    // Parses the block indented deeper than `parent_indent`.
    PyBody parse_block(int parent_indent) {
        PyBody body;
        if (pos_ >= lines_.size()) return body;
        int block_indent = lines_[pos_].indent;
        if (block_indent <= parent_indent) return body;
        while (pos_ < lines_.size()) {
            const SourceLine& line = lines_[pos_];
            if (line.indent < block_indent) break;
            if (line.indent > block_indent)
                throw PyIndentationError("unexpected indent", line.number);
            body.push_back(parse_stmt(block_indent));
        }
        return body;
    }

    PyStmt parse_stmt(int indent) {
        const SourceLine line = lines_[pos_];
        const std::string& t = line.text;

        if (starts_with(t, "elif")) throw WhitelistViolation("'elif'", line.number);
        if (starts_with(t, "else"))
            throw WhitelistViolation("'else' without a matching 'if'", line.number);

        if (starts_with(t, "while ") || starts_with(t, "while(")) {
            PyStmt s;
            s.kind = PyStmt::Kind::While;
            s.line = line.number;
            std::size_t colon = t.rfind(':');
            if (colon == std::string::npos)
                throw WhitelistViolation("missing ':' after while", line.number);
            s.cond = parse_py_condition(t.substr(5, colon - 5), line.number);
            ++pos_;
            s.body = parse_suite(t.substr(colon + 1), indent, line.number);
            return s;
        }
        if (starts_with(t, "if ") || starts_with(t, "if(")) {
            PyStmt s;
            s.kind = PyStmt::Kind::If;
            s.line = line.number;
            std::size_t colon = t.rfind(':');
            if (colon == std::string::npos)
                throw WhitelistViolation("missing ':' after if", line.number);
            s.cond = parse_py_condition(t.substr(2, colon - 2), line.number);
            ++pos_;
            s.body = parse_suite(t.substr(colon + 1), indent, line.number);
            if (pos_ < lines_.size() && lines_[pos_].indent == indent &&
                (lines_[pos_].text == "else:" || lines_[pos_].text == "else :")) {
                s.kind = PyStmt::Kind::IfElse;
                const SourceLine else_line = lines_[pos_];
                std::size_t c = else_line.text.find(':');
                ++pos_;
                s.else_body = parse_suite(else_line.text.substr(c + 1), indent, else_line.number);
            }
            return s;
        }
        if (starts_with(t, "for ") || starts_with(t, "for(")) {
            PyStmt s;
            s.kind = PyStmt::Kind::ForRange;
            s.line = line.number;
            std::size_t colon = t.rfind(':');
            if (colon == std::string::npos)
                throw WhitelistViolation("missing ':' after for", line.number);
            std::string header = strip(t.substr(4, colon - 4));
            std::size_t in_pos = header.find(" in ");
            if (in_pos == std::string::npos)
                throw WhitelistViolation("for loop without 'in range(n)'", line.number);
            std::string iterable = strip(header.substr(in_pos + 4));
            if (!starts_with(iterable, "range(") || iterable.back() != ')')
                throw WhitelistViolation("for loop over something besides range(n)",
                                         line.number);
            std::string count = strip(iterable.substr(6, iterable.size() - 7));
            if (count.empty() ||
                !std::all_of(count.begin(), count.end(),
                             [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
                throw WhitelistViolation("non-literal range bound '" + count + "'", line.number);
            s.range_count = std::stoi(count);
            ++pos_;
            s.body = parse_suite(t.substr(colon + 1), indent, line.number);
            return s;
        }
        if (starts_with(t, "def "))
            throw WhitelistViolation("function definition other than run()", line.number);
        PyStmt s = parse_simple(t, line.number);
        ++pos_;
        return s;
    }

    // A suite is either inline after the colon or an indented block.
    PyBody parse_suite(const std::string& inline_part, int indent, int line_number) {
        std::string inl = strip(inline_part);
        if (!inl.empty()) {
            PyBody body;
            body.push_back(parse_simple(inl, line_number));
            return body;
        }
        PyBody body = parse_block(indent);
        if (body.empty()) throw PyIndentationError("expected an indented block", line_number);
        return body;
    }

    std::vector<SourceLine> lines_;
    std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Python -> DSL conversion (the 16 rewrite rules)

void convert_condition(std::ostringstream& out, const PyCondition& c) {
    std::string inner;
    switch (c.kind) {
    case PyCondition::Kind::Perception: inner = perception_name(c.perception); break;
    case PyCondition::Kind::TrueLiteral: inner = "True"; break;
    case PyCondition::Kind::FalseLiteral: inner = "False"; break;
    }
    if (c.negated) out << "not c( " << inner << " c)";
    else out << inner;
}

void convert_body(std::ostringstream& out, const PyBody& body);

void convert_stmt(std::ostringstream& out, const PyStmt& s) {
    switch (s.kind) {
    case PyStmt::Kind::Call: out << action_name(s.action); break;
    case PyStmt::Kind::While:
        out << "WHILE c( ";
        convert_condition(out, s.cond);
        out << " c) w( ";
        convert_body(out, s.body);
        out << " w)";
        break;
    case PyStmt::Kind::If:
        out << "IF c( ";
        convert_condition(out, s.cond);
        out << " c) i( ";
        convert_body(out, s.body);
        out << " i)";
        break;
    case PyStmt::Kind::IfElse:
        out << "IFELSE c( ";
        convert_condition(out, s.cond);
        out << " c) i( ";
        convert_body(out, s.body);
        out << " i) ELSE e( ";
        convert_body(out, s.else_body);
        out << " e)";
        break;
    case PyStmt::Kind::ForRange:
        out << "REPEAT R=" << s.range_count << " r( ";
        convert_body(out, s.body);
        out << " r)";
        break;
    }
}

void convert_body(std::ostringstream& out, const PyBody& body) {
    for (std::size_t i = 0; i < body.size(); ++i) {
        if (i > 0) out << ' ';
        convert_stmt(out, body[i]);
    }
}

void collect_py_lines(const PyBody& body, std::vector<int>& lines) {
    for (const PyStmt& s : body) {
        lines.push_back(s.line);
        collect_py_lines(s.body, lines);
        collect_py_lines(s.else_body, lines);
    }
}

int count_stmts(const StmtList& stmts) {
    int n = 0;
    for (const Stmt& s : stmts) {
        ++n;
        if (const auto* w = std::get_if<WhileStmt>(&s.node)) n += count_stmts(w->body);
        else if (const auto* r = std::get_if<RepeatStmt>(&s.node)) n += count_stmts(r->body);
        else if (const auto* i = std::get_if<IfStmt>(&s.node)) n += count_stmts(i->body);
        else if (const auto* ie = std::get_if<IfElseStmt>(&s.node))
            n += count_stmts(ie->then_body) + count_stmts(ie->else_body);
    }
    return n;
}

// ---------------------------------------------------------------------------
// repair rules (token stream transforms)

using Tokens = std::vector<std::string>;

Tokens split_tokens(const std::string& text) {
    Tokens toks;
    std::istringstream in(text);
    std::string t;
    while (in >> t) toks.push_back(t);
    return toks;
}

std::string join_tokens(const Tokens& toks) {
    std::string out;
    for (std::size_t i = 0; i < toks.size(); ++i) {
        if (i > 0) out.push_back(' ');
        out += toks[i];
    }
    return out;
}

constexpr std::array<const char*, 6> kPairLetters = {"m", "c", "w", "i", "e", "r"};

bool is_opener(const std::string& t) {
    if (t.size() != 2 || t[1] != '(') return false;
    for (const char* p : kPairLetters)
        if (t[0] == p[0]) return true;
    return false;
}

bool is_closer(const std::string& t) {
    if (t.size() != 2 || t[1] != ')') return false;
    for (const char* p : kPairLetters)
        if (t[0] == p[0]) return true;
    return false;
}

bool is_callable_name(const std::string& t) {
    return action_by_name(t).has_value() || perception_by_name(t).has_value();
}

} // namespace

std::string repair_brackets_removal(const std::string& text) {
    Tokens toks = split_tokens(text);
    for (std::string& t : toks) {
        if (t.size() > 2 && t.compare(t.size() - 2, 2, "()") == 0 &&
            is_callable_name(t.substr(0, t.size() - 2))) {
            t.resize(t.size() - 2);
        }
    }
    return join_tokens(toks);
}

std::string repair_brackets_separation(const std::string& text) {
    Tokens toks = split_tokens(text);
    Tokens out;
    for (std::string t : toks) {
        bool changed = true;
        while (changed && t.size() > 2) {
            changed = false;
            if (is_opener(t.substr(0, 2))) {
                out.push_back(t.substr(0, 2));
                t = t.substr(2);
                changed = true;
            }
        }
        // fused closer at the end, e.g. "movem)" -> "move m)"
        if (t.size() > 2 && is_closer(t.substr(t.size() - 2)) &&
            is_callable_name(t.substr(0, t.size() - 2))) {
            out.push_back(t.substr(0, t.size() - 2));
            t = t.substr(t.size() - 2);
        }
        if (!t.empty()) out.push_back(t);
    }
    return join_tokens(out);
}

std::string repair_brackets_addition(const std::string& text) {
    Tokens toks = split_tokens(text);
    Tokens out;
    for (std::size_t i = 0; i < toks.size(); ++i) {
        out.push_back(toks[i]);
        bool is_while = toks[i] == "WHILE";
        bool is_if = toks[i] == "IF" || toks[i] == "IFELSE";
        if (!is_while && !is_if) continue;
        if (i + 1 < toks.size() && toks[i + 1] == "c(") continue; // already wrapped
        std::string body_open = is_while ? "w(" : "i(";
        std::size_t j = i + 1;
        while (j < toks.size() && toks[j] != body_open) ++j;
        if (j >= toks.size() || j == i + 1) continue; // no body opener / no condition
        out.push_back("c(");
        for (std::size_t k = i + 1; k < j; ++k) out.push_back(toks[k]);
        out.push_back("c)");
        i = j - 1; // resume at the body opener
    }
    return join_tokens(out);
}

std::string repair_brackets_repairment(const std::string& text) {
    Tokens toks = split_tokens(text);
    std::vector<char> open_stack;
    for (std::string& t : toks) {
        if (is_opener(t)) {
            open_stack.push_back(t[0]);
        } else if (is_closer(t)) {
            if (!open_stack.empty() && open_stack.back() == t[0]) open_stack.pop_back();
        } else if (t == ")") {
            // bare closer: infer the innermost open pair
            if (!open_stack.empty()) {
                t = std::string(1, open_stack.back()) + ")";
                open_stack.pop_back();
            }
        }
    }
    return join_tokens(toks);
}

std::string repair_if_to_ifelse(const std::string& text) {
    Tokens toks = split_tokens(text);
    for (std::size_t i = 0; i < toks.size(); ++i) {
        if (toks[i] != "IF") continue;
        std::size_t j = i + 1;
        while (j < toks.size() && toks[j] != "i(") ++j;
        if (j >= toks.size()) continue;
        int depth = 0;
        std::size_t k = j;
        for (; k < toks.size(); ++k) {
            if (toks[k] == "i(") ++depth;
            else if (toks[k] == "i)") {
                --depth;
                if (depth == 0) break;
            }
        }
        if (k < toks.size() && k + 1 < toks.size() && toks[k + 1] == "ELSE") toks[i] = "IFELSE";
    }
    return join_tokens(toks);
}

std::string repair_redundant_symbols(const std::string& text) {
    Tokens toks = split_tokens(repair_brackets_removal(text));
    Tokens out;
    for (const std::string& t : toks) {
        if (t == "()") continue;
        bool bare_letter = t.size() == 1 && is_opener(t + "(");
        if (bare_letter) continue;
        out.push_back(t);
    }
    return join_tokens(out);
}

std::string repair_illegal_symbols(const std::string& text) {
    Tokens toks = split_tokens(text);
    for (std::size_t i = 0; i + 4 < toks.size(); ++i) {
        if (toks[i] != "WHILE" || toks[i + 1] != "c(" ||
            (toks[i + 2] != "True" && toks[i + 2] != "False") || toks[i + 3] != "c)" ||
            toks[i + 4] != "w(")
            continue;
        // WHILE c( True c) w( body w)  ->  REPEAT R=19 r( body r)
        int depth = 0;
        std::size_t close = i + 4;
        for (; close < toks.size(); ++close) {
            if (toks[close] == "w(") ++depth;
            else if (toks[close] == "w)") {
                --depth;
                if (depth == 0) break;
            }
        }
        if (close >= toks.size()) continue;
        bool forever = toks[i + 2] == "True";
        toks[i] = "REPEAT";
        toks[i + 1] = forever ? "R=19" : "R=0";
        toks[i + 4] = "r(";
        toks[close] = "r)";
        toks.erase(toks.begin() + i + 2, toks.begin() + i + 4); // drop "True c)"
    }
    return join_tokens(toks);
}

std::string repair_normalize_not(const std::string& text) {
    Tokens toks = split_tokens(text);
    Tokens out;
    for (std::size_t i = 0; i < toks.size(); ++i) {
        if (i + 3 < toks.size() && toks[i] == "not" && toks[i + 1] == "c(" &&
            toks[i + 3] == "c)" &&
            (toks[i + 2] == "markersPresent" || toks[i + 2] == "noMarkersPresent")) {
            out.push_back(toks[i + 2] == "markersPresent" ? "noMarkersPresent"
                                                          : "markersPresent");
            i += 3;
            continue;
        }
        out.push_back(toks[i]);
    }
    return join_tokens(out);
}

RepairResult repair(const std::string& dsl_text) {
    std::string t = repair_brackets_removal(dsl_text);
    t = repair_brackets_separation(t);
    t = repair_brackets_addition(t);
    t = repair_brackets_repairment(t);
    t = repair_if_to_ifelse(t);
    t = repair_redundant_symbols(t);
    t = repair_illegal_symbols(t);
    t = repair_normalize_not(t);

    RepairResult res;
    res.text = t;
    try {
        res.ast = parse_program(t);
        res.parses = true;
    } catch (const ParseError& e) {
        res.parses = false;
        res.error = e.what();
    }
    return res;
}

// ---------------------------------------------------------------------------
// candidate extraction

RestrictedPyAst parse_restricted_python(const std::string& text) {
    return PyParser(significant_lines(text)).parse();
}

std::string convert_py_to_dsl(const RestrictedPyAst& py) {
    if (py.body.empty()) throw UnconvertibleNode("run() has an empty body");
    std::ostringstream out;
    out << "DEF run m( ";
    convert_body(out, py.body);
    out << " m)";
    return out.str();
}

std::vector<RawCandidate> extract_code_blocks(const std::string& response) {
    std::vector<RawCandidate> blocks;
    std::istringstream in(response);
    std::string line;
    bool in_block = false;
    std::string tag;
    std::string body;
    int index = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string stripped = strip(line);
        if (starts_with(stripped, "```")) {
            if (!in_block) {
                in_block = true;
                tag = strip(stripped.substr(3));
                body.clear();
            } else {
                in_block = false;
                RawCandidate cand;
                cand.text = body;
                cand.origin = index++;
                std::string lower_tag;
                for (char ch : tag)
                    lower_tag.push_back(
                        static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
                if (lower_tag.find("python") != std::string::npos ||
                    (lower_tag.empty() && body.find("def run") != std::string::npos)) {
                    cand.source_kind = RawCandidate::SourceKind::PythonBlock;
                    blocks.push_back(std::move(cand));
                } else if (body.find("DEF") != std::string::npos) {
                    cand.source_kind = RawCandidate::SourceKind::DslBlock;
                    blocks.push_back(std::move(cand));
                }
            }
            continue;
        }
        if (in_block) {
            body += line;
            body.push_back('\n');
        }
    }
    return blocks;
}

std::vector<CandidateProgram> extract_candidates(const std::string& response,
                                                 const AstLimits& limits,
                                                 std::vector<ExtractionLogEntry>* log) {
    std::vector<RawCandidate> blocks = extract_code_blocks(response);
    std::vector<CandidateProgram> python_derived;
    std::vector<CandidateProgram> dsl_derived;

    auto note = [&](int block, const char* path, bool ok, std::string reason) {
        if (log) log->push_back({block, path, ok, std::move(reason)});
    };

    for (const RawCandidate& block : blocks) {
        if (block.source_kind == RawCandidate::SourceKind::PythonBlock) {
            try {
                RestrictedPyAst py = parse_restricted_python(block.text);
                RepairResult rep = repair(convert_py_to_dsl(py));
                if (!rep.parses) {
                    note(block.origin, "python", false, "repair failed: " + rep.error);
                    continue;
                }
                if (!within_limits(*rep.ast, limits)) {
                    note(block.origin, "python", false, "exceeds AST limits");
                    continue;
                }
                CandidateProgram cand;
                cand.ast = *rep.ast;
                cand.canonical = print_program(cand.ast);
                cand.source = RawCandidate::SourceKind::PythonBlock;
                cand.python_source = block.text;
                std::vector<int> py_lines;
                collect_py_lines(py.body, py_lines);
                // the preorder statement counts line up unless repair restructured
                if (count_stmts(cand.ast.body) == static_cast<int>(py_lines.size()))
                    cand.node_lines = std::move(py_lines);
                note(block.origin, "python", true, "");
                python_derived.push_back(std::move(cand));
            } catch (const std::exception& e) {
                note(block.origin, "python", false, e.what());
            }
        } else {
            RepairResult rep = repair(block.text);
            if (!rep.parses) {
                note(block.origin, "dsl", false, "repair failed: " + rep.error);
                continue;
            }
            if (!within_limits(*rep.ast, limits)) {
                note(block.origin, "dsl", false, "exceeds AST limits");
                continue;
            }
            CandidateProgram cand;
            cand.ast = *rep.ast;
            cand.canonical = print_program(cand.ast);
            cand.source = RawCandidate::SourceKind::DslBlock;
            note(block.origin, "dsl", true, "");
            dsl_derived.push_back(std::move(cand));
        }
    }

    std::vector<CandidateProgram>& chosen =
        python_derived.empty() ? dsl_derived : python_derived;
    std::vector<CandidateProgram> out;
    for (CandidateProgram& cand : chosen) {
        bool dup = false;
        for (const CandidateProgram& seen : out)
            if (seen.canonical == cand.canonical) {
                dup = true;
                break;
            }
        if (!dup) out.push_back(std::move(cand));
    }
    return out;
}

} // namespace karelgs
