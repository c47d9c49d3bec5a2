#pragma once

#include "polybound/program.hpp"

#include <stdexcept>
#include <string>
#include <string_view>

namespace polybound {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string &msg, int line, int column)
        : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg), line_(line),
          column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

/// Parses the rule format:
///
///   (GOAL COMPLEXITY)
///   (STARTTERM (FUNCTIONSYMBOLS l0))
///   (VAR x y)
///   (RULES
///     l0(x,y) -> l1(x,y)
///     l1(x,y) -> l1(x-1,y) :|: x > 0 && y != 0
///   )
///
/// Transitions are named t0, t1, ... in declaration order.
Program parse_program(std::string_view text);

Program parse_program_file(const std::string &path);

/// Parses a single polynomial over the given variables (used by tests and the CLI).
Polynomial parse_polynomial(std::string_view text, const std::vector<Var> &vars);

} // namespace polybound
