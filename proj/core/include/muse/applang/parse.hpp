#pragma once

#include <optional>
#include <string>
#include <vector>

#include "muse/applang/ast.hpp"
#include "muse/applang/diagnostics.hpp"

namespace muse::applang {

struct SourceUnit {
  std::string name;
  std::string text;
};

struct ParseResult {
  std::optional<Program> program;
  DiagnosticList diagnostics;

  bool ok() const { return program.has_value() && diagnostics.empty(); }
};

/// Parses and validates one program from one or more `.al` units.
/// On success the program is fully resolved: manifest references, layout
/// references, callback markers, and variable scopes have all been checked.
ParseResult parseProgram(const std::vector<SourceUnit>& units);

/// Convenience wrapper that throws std::runtime_error with the joined
/// diagnostics when parsing fails.
Program parseProgramOrThrow(const std::vector<SourceUnit>& units);

}  // namespace muse::applang
