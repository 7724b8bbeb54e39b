#include "muse/mutagen/mip.hpp"

#include "muse/applang/scope.hpp"

namespace muse::mutagen {

using applang::ClassKind;
using applang::ProgramIndex;

const char* schemeName(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::Reachability: return "reach";
    case SchemeKind::ComplexReachability: return "complex";
    case SchemeKind::Taint: return "taint";
    case SchemeKind::Scope: return "scope";
  }
  return "reach";
}

std::optional<SchemeKind> schemeFromName(const std::string& name) {
  if (name == "reach" || name == "reachability") return SchemeKind::Reachability;
  if (name == "complex" || name == "complex-reachability")
    return SchemeKind::ComplexReachability;
  if (name == "taint") return SchemeKind::Taint;
  if (name == "scope") return SchemeKind::Scope;
  return std::nullopt;
}

const char* pointKindName(PointKind kind) {
  switch (kind) {
    case PointKind::MethodEntry: return "methodEntry";
    case PointKind::ClassDecl: return "classDecl";
    case PointKind::CallbackBody: return "callbackBody";
    case PointKind::ScopePair: return "scopePair";
    case PointKind::TaintPair: return "taintPair";
  }
  return "methodEntry";
}

namespace {

bool isAsyncClosure(const ProgramIndex::ClassInfo& info) {
  if (!info.declaringStmt) return false;
  auto k = info.declaringStmt->kind;
  return k == applang::StmtKind::RunOnUi || k == applang::StmtKind::Submit ||
         k == applang::StmtKind::StartThread;
}

}  // namespace

bool prioritizedHousing(const applang::Program& program, const ProgramIndex& index,
                        int classId, int methodIndex) {
  const ProgramIndex::ClassInfo& info = index.classInfo(classId);
  if (info.decl->kind == ClassKind::Fragment ||
      info.decl->kind == ClassKind::Receiver)
    return true;
  if (isAsyncClosure(info)) return true;
  if (index.anonWithinAnon(classId)) return true;
  if (methodIndex >= 0 && info.decl->usesLayout) {
    const std::string& methodName = info.decl->methods[methodIndex].name;
    for (const applang::LayoutResource& layout : program.layouts) {
      if (layout.id != *info.decl->usesLayout) continue;
      for (const applang::Button& b : layout.buttons)
        if (b.onClickBinding && *b.onClickBinding == methodName) return true;
    }
  }
  return false;
}

namespace {

std::vector<int> callbackMethodIndices(const applang::ClassDecl& cls) {
  std::vector<int> out;
  for (size_t m = 0; m < cls.methods.size(); ++m)
    if (cls.methods[m].isCallback) out.push_back(static_cast<int>(m));
  return out;
}

}  // namespace

std::vector<InjectionPoint> computeMip(const applang::Program& program,
                                       const ProgramIndex& index,
                                       const MutationScheme& scheme,
                                       const SecurityOperator& op) {
  (void)op;  // placement is operator-independent; the operator shapes the code
  std::vector<InjectionPoint> points;

  auto makePoint = [&](PointKind kind, int classId, int methodIndex) {
    InjectionPoint p;
    p.kind = kind;
    p.classId = classId;
    p.methodIndex = methodIndex;
    p.prioritized = prioritizedHousing(program, index, classId, methodIndex);
    return p;
  };

  switch (scheme.kind) {
    case SchemeKind::Reachability:
      for (const ProgramIndex::ClassInfo& info : index.classes()) {
        if (!info.decl->anonymous)
          points.push_back(makePoint(PointKind::ClassDecl, info.id, -1));
        for (size_t m = 0; m < info.decl->methods.size(); ++m)
          points.push_back(
              makePoint(PointKind::MethodEntry, info.id, static_cast<int>(m)));
      }
      break;

    case SchemeKind::ComplexReachability:
      for (const ProgramIndex::ClassInfo& info : index.classes())
        for (size_t m = 0; m < info.decl->methods.size(); ++m)
          points.push_back(
              makePoint(PointKind::MethodEntry, info.id, static_cast<int>(m)));
      break;

    case SchemeKind::Taint:
      for (const ProgramIndex::ClassInfo& info : index.classes()) {
        std::vector<int> callbacks = callbackMethodIndices(*info.decl);
        if (callbacks.empty()) continue;
        for (int src : callbacks) {
          InjectionPoint p = makePoint(PointKind::CallbackBody, info.id, src);
          points.push_back(p);
        }
        for (int src : callbacks) {
          for (int sink : callbacks) {
            if (scheme.params.taintPairing == TaintPairing::CrossOnly && src == sink)
              continue;
            InjectionPoint p = makePoint(PointKind::TaintPair, info.id, -1);
            p.sourceMethodIndex = src;
            p.sinkMethodIndex = sink;
            p.prioritized = prioritizedHousing(program, index, info.id, sink);
            points.push_back(p);
          }
        }
      }
      break;

    case SchemeKind::Scope:
      for (const ProgramIndex::ClassInfo& outer : index.classes()) {
        if (outer.decl->anonymous || outer.decl->methods.empty()) continue;
        for (const ProgramIndex::ClassInfo& inner : index.classes()) {
          if (inner.decl->anonymous || inner.id == outer.id) continue;
          int distance = 0;
          int id = inner.parentId;
          bool descendant = false;
          while (id >= 0) {
            ++distance;
            if (id == outer.id) {
              descendant = true;
              break;
            }
            id = index.classInfo(id).parentId;
          }
          if (!descendant || distance > scheme.params.scopeMaxDepth) continue;
          for (size_t m = 0; m < inner.decl->methods.size(); ++m) {
            InjectionPoint p;
            p.kind = PointKind::ScopePair;
            p.classId = outer.id;
            p.innerClassId = inner.id;
            p.innerMethodIndex = static_cast<int>(m);
            p.outerMethodIndex = 0;  // sink lands in the first declared method
            p.prioritized =
                prioritizedHousing(program, index, inner.id, static_cast<int>(m));
            points.push_back(p);
          }
        }
      }
      break;
  }
  return points;
}

}  // namespace muse::mutagen
