#pragma once

#include <string>

#include "pblimp/ast.hpp"

namespace pblimp {

std::string pretty_expr(const Expr& e);
std::string pretty_prop(const Prop& p);
std::string pretty_sample_spec(const SampleSpec& spec);
std::string pretty_threshold(const Threshold& t);

// One-line head of a statement, for diagnostics.
std::string stmt_head(const Stmt& s);

std::string pretty_stmt(const Stmt& s, int indent = 0);

// Full program text; parse(pretty_program(p)) is structurally equal to p for
// diverge-free programs.
std::string pretty_program(const Program& p);

}  // namespace pblimp
