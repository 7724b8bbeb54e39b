#pragma once

#include <string>
#include <vector>

namespace muse::applang {

struct Diagnostic {
  std::string unit;
  int line = 0;
  int col = 0;
  std::string message;

  std::string str() const;
};

using DiagnosticList = std::vector<Diagnostic>;

std::string joinDiagnostics(const DiagnosticList& diags);

}  // namespace muse::applang
