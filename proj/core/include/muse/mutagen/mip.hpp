#pragma once

#include <optional>
#include <string>
#include <vector>

#include "muse/applang/ast.hpp"
#include "muse/mutagen/operator.hpp"

namespace muse::mutagen {

enum class SchemeKind { Reachability, ComplexReachability, Taint, Scope };

const char* schemeName(SchemeKind kind);
std::optional<SchemeKind> schemeFromName(const std::string& name);

enum class TaintPairing { AllPairs, CrossOnly };

struct SchemeParams {
  TaintPairing taintPairing = TaintPairing::AllPairs;
  int scopeMaxDepth = 2;  // max lexical distance between outer and inner class
};

struct MutationScheme {
  SchemeKind kind = SchemeKind::Reachability;
  SchemeParams params;
};

enum class PointKind { MethodEntry, ClassDecl, CallbackBody, ScopePair, TaintPair };

const char* pointKindName(PointKind kind);

/// One admissible operator placement. Reachability and ComplexReachability
/// use MethodEntry (Reachability additionally ClassDecl); Taint uses
/// CallbackBody for the per-callback source and TaintPair for each
/// source/sink callback pair; Scope uses ScopePair.
struct InjectionPoint {
  PointKind kind = PointKind::MethodEntry;
  int classId = -1;         // housing class (outer class for ScopePair)
  int methodIndex = -1;     // MethodEntry/CallbackBody target
  int sourceMethodIndex = -1;  // TaintPair source callback
  int sinkMethodIndex = -1;    // TaintPair sink callback
  int innerClassId = -1;       // ScopePair inner class
  int innerMethodIndex = -1;   // ScopePair inner method
  int outerMethodIndex = -1;   // ScopePair outer sink host
  // Housed in an abstraction the placement strategy prioritizes: fragments,
  // receivers, async closures, nested dynamic callbacks, layout handlers.
  bool prioritized = false;
};

/// Exhaustive, over-approximating enumeration of injection points for one
/// scheme. Deterministic: points come out in program index order.
std::vector<InjectionPoint> computeMip(const applang::Program& program,
                                       const applang::ProgramIndex& index,
                                       const MutationScheme& scheme,
                                       const SecurityOperator& op);

/// True if the point sits inside a fragment, receiver, async closure, nested
/// dynamic callback, or a layout-bound handler method.
bool prioritizedHousing(const applang::Program& program,
                        const applang::ProgramIndex& index, int classId,
                        int methodIndex);

}  // namespace muse::mutagen
