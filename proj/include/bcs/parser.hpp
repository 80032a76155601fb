#ifndef BCS_PARSER_HPP
#define BCS_PARSER_HPP

#include <stdexcept>
#include <string>

#include "bcs/constraint.hpp"

namespace bcs {

struct ParseError : std::runtime_error {
    int line;
    int col;
    ParseError(const std::string& msg, int line_, int col_)
        : std::runtime_error("parse error at " + std::to_string(line_) + ":" +
                             std::to_string(col_) + ": " + msg),
          line(line_), col(col_) {}
};

// Parses the line-oriented problem format:
//
//   problem <name>
//   var <ident> in [<number>, <number>]
//   let <ident> = <expr>
//   constraint <expr> <rel> <expr> [or <cmp> ...]
//
// `let` definitions are inlined by substitution. Chained comparisons
// (a <= e <= b) expand into separate constraints. Statements are separated
// by newlines or `;` at parenthesis depth zero; `#` starts a comment.
NCSP parse_problem(const std::string& text);

// Renders an NCSP back to the problem format; parse_problem of the result
// reproduces structurally identical constraints and bit-identical domains.
std::string print_problem(const NCSP& p);

}  // namespace bcs

#endif  // BCS_PARSER_HPP
