#include "karelgs/parser.hpp"

#include <optional>
#include <sstream>
#include <vector>

namespace karelgs {

namespace {

std::vector<std::string> tokenize(const std::string& text) {
    std::vector<std::string> tokens;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) tokens.push_back(tok);
    return tokens;
}

std::optional<AgentAction> action_from_token(const std::string& t) {
    if (t == "move") return AgentAction::Move;
    if (t == "turnLeft") return AgentAction::TurnLeft;
    if (t == "turnRight") return AgentAction::TurnRight;
    if (t == "putMarker") return AgentAction::PutMarker;
    if (t == "pickMarker") return AgentAction::PickMarker;
    return std::nullopt;
}

std::optional<Perception> perception_from_token(const std::string& t) {
    if (t == "frontIsClear") return Perception::FrontIsClear;
    if (t == "leftIsClear") return Perception::LeftIsClear;
    if (t == "rightIsClear") return Perception::RightIsClear;
    if (t == "markersPresent") return Perception::MarkersPresent;
    if (t == "noMarkersPresent") return Perception::NoMarkersPresent;
    return std::nullopt;
}

class Parser {
public:
    explicit Parser(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {}

    ProgramAst parse() {
        expect("DEF");
        expect("run");
        expect("m(");
        ProgramAst ast;
        ast.body = parse_stmts("m)");
        expect("m)");
        if (pos_ != static_cast<int>(tokens_.size()))
            fail("trailing tokens after program end");
        return ast;
    }

private:
    [[noreturn]] void fail(const std::string& what) {
        std::ostringstream msg;
        msg << what << " at token " << pos_;
        if (pos_ < static_cast<int>(tokens_.size())) msg << " ('" << tokens_[pos_] << "')";
        else msg << " (end of input)";
        throw ParseError(msg.str(), pos_);
    }

    const std::string& peek() {
        if (pos_ >= static_cast<int>(tokens_.size())) fail("unexpected end of input");
        return tokens_[pos_];
    }

    bool at_end() const { return pos_ >= static_cast<int>(tokens_.size()); }

    std::string take() {
        const std::string& t = peek();
        ++pos_;
        return t;
    }

    void expect(const std::string& tok) {
        if (at_end()) fail("expected '" + tok + "' but input ended");
        if (tokens_[pos_] != tok) fail("expected '" + tok + "'");
        ++pos_;
    }

    bool starts_stmt(const std::string& t) const {
        return t == "WHILE" || t == "REPEAT" || t == "IF" || t == "IFELSE" ||
               action_from_token(t).has_value();
    }

    StmtList parse_stmts(const std::string& closer) {
        StmtList stmts;
        while (!at_end() && peek() != closer && starts_stmt(peek())) {
            stmts.push_back(parse_stmt());
        }
        if (stmts.empty()) fail("expected at least one statement before '" + closer + "'");
        return stmts;
    }

    Condition parse_condition() {
        Condition c;
        if (peek() == "not") {
            take();
            c.negated = true;
            expect("c(");
            c.perception = parse_perception();
            expect("c)");
        } else {
            c.perception = parse_perception();
        }
        return c;
    }

    Perception parse_perception() {
        const std::string t = peek();
        if (auto p = perception_from_token(t)) {
            ++pos_;
            return *p;
        }
        fail("expected a perception");
    }

    int parse_repeat_count() {
        const std::string t = peek();
        if (t.size() < 3 || t[0] != 'R' || t[1] != '=') fail("expected 'R=<count>'");
        int value = 0;
        for (std::size_t i = 2; i < t.size(); ++i) {
            if (t[i] < '0' || t[i] > '9') fail("malformed repeat count");
            value = value * 10 + (t[i] - '0');
            if (value > 1000) break;
        }
        if (value < kRepeatMin || value > kRepeatMax) fail("repeat count out of range 0..19");
        ++pos_;
        return value;
    }

    Stmt parse_stmt() {
        const std::string t = peek();
        if (auto a = action_from_token(t)) {
            ++pos_;
            return make_action(*a);
        }
        if (t == "WHILE") {
            take();
            expect("c(");
            Condition cond = parse_condition();
            expect("c)");
            expect("w(");
            StmtList body = parse_stmts("w)");
            expect("w)");
            return make_while(cond, std::move(body));
        }
        if (t == "REPEAT") {
            take();
            int count = parse_repeat_count();
            expect("r(");
            StmtList body = parse_stmts("r)");
            expect("r)");
            return make_repeat(count, std::move(body));
        }
        if (t == "IF") {
            take();
            expect("c(");
            Condition cond = parse_condition();
            expect("c)");
            expect("i(");
            StmtList body = parse_stmts("i)");
            expect("i)");
            return make_if(cond, std::move(body));
        }
        if (t == "IFELSE") {
            take();
            expect("c(");
            Condition cond = parse_condition();
            expect("c)");
            expect("i(");
            StmtList then_body = parse_stmts("i)");
            expect("i)");
            expect("ELSE");
            expect("e(");
            StmtList else_body = parse_stmts("e)");
            expect("e)");
            return make_ifelse(cond, std::move(then_body), std::move(else_body));
        }
        fail("unknown token");
    }

    std::vector<std::string> tokens_;
    int pos_ = 0;
};

} // namespace

ProgramAst parse_program(const std::string& text) {
    return Parser(tokenize(text)).parse();
}

} // namespace karelgs
