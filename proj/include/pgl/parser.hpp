#pragma once

#include <string>
#include <string_view>

#include "pgl/ast.hpp"

namespace pgl {

// Parses and validates a .pgl program. Throws ParseError (with 1-based
// line/column) on syntax errors, undeclared names, weights outside [0, 1]
// and non-normalized fuzzy interpretations. Declarations must precede use.
Program parse_program(std::string_view text);

// Reads the file and parses it; ParseError messages are prefixed with path.
Program parse_program_file(const std::string& path);

// Canonical text form; parse_program(format_program(p)) is structurally
// equal to p. Statements are grouped as sorts, vars, clauses, queries.
std::string format_program(const Program& program);

}  // namespace pgl
