#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "muse/applang/ast.hpp"
#include "muse/applang/diagnostics.hpp"

namespace muse::applang {

/// Statement address inside a method body: statement index, then for each
/// nesting level a branch marker (0 = then, 1 = else) and the inner index.
using StmtPath = std::vector<int>;

std::string stmtPathKey(const StmtPath& path);

struct Symbol {
  enum class Origin { Local, Param, Field, EnclosingField };
  std::string name;
  Origin origin = Origin::Local;
  int classId = -1;  // declaring class for fields
};

const char* originName(Symbol::Origin origin);

/// Visible symbols per statement position, post-shadowing.
class ScopeTable {
 public:
  using Key = std::string;  // "<classId>#<methodIndex>#<path>"

  static Key key(const MethodRef& method, const StmtPath& path);

  void put(const Key& key, std::vector<Symbol> symbols);
  const std::vector<Symbol>* at(const Key& key) const;
  const std::map<Key, std::vector<Symbol>>& entries() const { return table_; }

  /// Symbol visible under `name` at the position, if any.
  std::optional<Symbol> lookup(const MethodRef& method, const StmtPath& path,
                               const std::string& name) const;

 private:
  std::map<Key, std::vector<Symbol>> table_;
};

struct ScopeResult {
  ScopeTable table;
  DiagnosticList diagnostics;  // unresolved references
  bool ok() const { return diagnostics.empty(); }
};

/// Resolves a class name as seen from `fromClassId`: the enclosing chain
/// itself, named nested classes of each ancestor, then the top level.
std::optional<int> resolveClassRef(const ProgramIndex& index, int fromClassId,
                                   const std::string& name);

/// Resolves every variable reference, assignment target and call target in
/// the program. Positions cover every statement of every method, including
/// methods of anonymous classes.
ScopeResult resolveScopes(const Program& program, const ProgramIndex& index);

enum class RegistrationSite {
  Lifecycle,        // activity/fragment lifecycle callback
  ManifestReceiver, // receiver registered in the manifest
  LayoutBinding,    // button onClick= binding in a layout
  DynamicReceiver,  // registerReceiver(...)
  DynamicListener,  // setOnClick(...)
  AsyncClosure,     // runOnUi / submit / startThread closure body
  Unregistered,     // callback never wired to an event source
};

const char* registrationSiteName(RegistrationSite site);

struct CallbackEntry {
  std::string className;  // qualified
  std::string methodName;
  std::string callbackKind;  // callback tag, or "run" for async closures
  RegistrationSite site = RegistrationSite::Unregistered;
  bool nestedDynamic = false;  // dynamic registration inside a dynamic callback
  MethodRef method;
};

struct CallbackInventory {
  std::vector<CallbackEntry> entries;
  DiagnosticList diagnostics;  // layout bindings naming missing methods
};

CallbackInventory callbackInventory(const Program& program,
                                    const ProgramIndex& index);

}  // namespace muse::applang
