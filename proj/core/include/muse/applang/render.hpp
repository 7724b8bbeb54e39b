#pragma once

#include <string>
#include <vector>

#include "muse/applang/ast.hpp"
#include "muse/applang/parse.hpp"

namespace muse::applang {

/// Renders a program back to canonical source text, one unit per manifest
/// source file. Deterministic: the same AST always yields identical bytes.
std::vector<SourceUnit> renderProgram(const Program& program);

std::string renderExpr(const Expr& expr);

/// Content hash over the rendered units, as a lowercase hex string.
std::string programFingerprint(const Program& program);

}  // namespace muse::applang
