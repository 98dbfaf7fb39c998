#pragma once

#include "karelgs/ast.hpp"

#include <stdexcept>
#include <string>

namespace karelgs {

// Syntax error with the offset of the offending token in the token stream
// (0-based) and a human-readable message.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, int token_index)
        : std::runtime_error(std::move(message)), token_index_(token_index) {}
    int token_index() const { return token_index_; }

private:
    int token_index_;
};

// Parses a whitespace-insensitive DSL token stream, e.g. "DEF run m( move m)".
// Throws ParseError on unknown tokens, unbalanced paired brackets, and
// out-of-range repeat counts.
ProgramAst parse_program(const std::string& text);

} // namespace karelgs
