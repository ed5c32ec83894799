#pragma once

#include <string>

#include "pblimp/ast.hpp"
#include "pblimp/diagnostics.hpp"

namespace pblimp {

// Parses a .pbl program (header of param/uvar/ovar declarations, then the
// statement body). Throws ParseError with line/column and the expected-token
// set. `diverge` is reserved for tool-generated unrollings and rejected here.
Program parse_program(const std::string& text);

// Expression / proposition entry points for predicate surface syntax reuse.
Expr parse_expr_text(const std::string& text);
Prop parse_prop_text(const std::string& text);

}  // namespace pblimp
