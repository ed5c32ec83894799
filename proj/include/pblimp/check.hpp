#pragma once

#include <vector>

#include "pblimp/ast.hpp"
#include "pblimp/diagnostics.hpp"

namespace pblimp {

// Enforces the observable/unobservable discipline plus declaration sanity:
// unique names, declared variables/parameters, mandatory non-empty domains
// for unobservable variables, sample weights summing to 1, threshold bounds
// in [0, 1]. An empty result means the program is well-typed.
std::vector<TypeError> check_observability(const Program& prog);

// Replaces every bare `observe x` with `_obsN = observe x` using fresh
// observable variables (declared in the output program); idempotent and
// semantics-preserving on the original variables.
Program desugar(const Program& prog);

}  // namespace pblimp
