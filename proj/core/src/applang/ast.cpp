#include "muse/applang/ast.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace muse::applang {

const char* classKindName(ClassKind kind) {
  switch (kind) {
    case ClassKind::Activity: return "activity";
    case ClassKind::Fragment: return "fragment";
    case ClassKind::Receiver: return "receiver";
    case ClassKind::Listener: return "listener";
    case ClassKind::Plain: return "class";
  }
  return "class";
}

std::optional<ClassKind> classKindFromName(const std::string& name) {
  if (name == "activity") return ClassKind::Activity;
  if (name == "fragment") return ClassKind::Fragment;
  if (name == "receiver") return ClassKind::Receiver;
  if (name == "listener") return ClassKind::Listener;
  if (name == "class") return ClassKind::Plain;
  return std::nullopt;
}

const std::vector<std::string>& callbackSet(ClassKind kind) {
  static const std::vector<std::string> activity = {
      "onCreate", "onStart", "onResume", "onPause", "onStop", "onDestroy"};
  static const std::vector<std::string> fragment = {"onCreate", "onCreateView",
                                                    "onDestroyView"};
  static const std::vector<std::string> receiver = {"onReceive"};
  static const std::vector<std::string> listener = {"onClick"};
  static const std::vector<std::string> none;
  switch (kind) {
    case ClassKind::Activity: return activity;
    case ClassKind::Fragment: return fragment;
    case ClassKind::Receiver: return receiver;
    case ClassKind::Listener: return listener;
    case ClassKind::Plain: return none;
  }
  return none;
}

bool isCallbackName(ClassKind kind, const std::string& method) {
  const auto& set = callbackSet(kind);
  return std::find(set.begin(), set.end(), method) != set.end();
}

Expr Expr::lit(std::string value) {
  Expr e;
  e.kind = ExprKind::StringLit;
  e.text = std::move(value);
  return e;
}

Expr Expr::var(std::string name) {
  Expr e;
  e.kind = ExprKind::VarRef;
  e.text = std::move(name);
  return e;
}

Expr Expr::concat(Expr lhs, Expr rhs) {
  Expr e;
  e.kind = ExprKind::Concat;
  e.args.push_back(std::move(lhs));
  e.args.push_back(std::move(rhs));
  return e;
}

Expr Expr::rebuild(Expr inner) {
  Expr e;
  e.kind = ExprKind::CharRebuild;
  e.args.push_back(std::move(inner));
  return e;
}

Expr Expr::sourceCall(std::string api) {
  Expr e;
  e.kind = ExprKind::SourceCall;
  e.text = std::move(api);
  return e;
}

Expr Expr::cryptoCall(std::string api, Expr arg) {
  Expr e;
  e.kind = ExprKind::CryptoCall;
  e.text = std::move(api);
  e.args.push_back(std::move(arg));
  return e;
}

Stmt::Stmt(const Stmt& other)
    : kind(other.kind),
      name(other.name),
      member(other.member),
      exprs(other.exprs),
      cond(other.cond),
      thenBlock(other.thenBlock),
      elseBlock(other.elseBlock),
      hasElse(other.hasElse),
      loc(other.loc) {
  if (other.anonClass) anonClass = std::make_unique<ClassDecl>(*other.anonClass);
}

Stmt& Stmt::operator=(const Stmt& other) {
  if (this == &other) return *this;
  Stmt copy(other);
  *this = std::move(copy);
  return *this;
}

Stmt::~Stmt() = default;

namespace {

bool exprEqual(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.text != b.text || a.args.size() != b.args.size())
    return false;
  for (size_t i = 0; i < a.args.size(); ++i)
    if (!exprEqual(a.args[i], b.args[i])) return false;
  return true;
}

bool classEqual(const ClassDecl& a, const ClassDecl& b);

bool stmtEqual(const Stmt& a, const Stmt& b) {
  if (a.kind != b.kind || a.name != b.name || a.member != b.member ||
      a.cond != b.cond || a.hasElse != b.hasElse)
    return false;
  if (a.exprs.size() != b.exprs.size() || a.thenBlock.size() != b.thenBlock.size() ||
      a.elseBlock.size() != b.elseBlock.size())
    return false;
  for (size_t i = 0; i < a.exprs.size(); ++i)
    if (!exprEqual(a.exprs[i], b.exprs[i])) return false;
  for (size_t i = 0; i < a.thenBlock.size(); ++i)
    if (!stmtEqual(a.thenBlock[i], b.thenBlock[i])) return false;
  for (size_t i = 0; i < a.elseBlock.size(); ++i)
    if (!stmtEqual(a.elseBlock[i], b.elseBlock[i])) return false;
  if (static_cast<bool>(a.anonClass) != static_cast<bool>(b.anonClass)) return false;
  if (a.anonClass && !classEqual(*a.anonClass, *b.anonClass)) return false;
  return true;
}

bool methodEqual(const MethodDecl& a, const MethodDecl& b) {
  if (a.name != b.name || a.isCallback != b.isCallback || a.params != b.params ||
      a.body.size() != b.body.size())
    return false;
  for (size_t i = 0; i < a.body.size(); ++i)
    if (!stmtEqual(a.body[i], b.body[i])) return false;
  return true;
}

bool classEqual(const ClassDecl& a, const ClassDecl& b) {
  if (a.kind != b.kind || a.name != b.name || a.anonymous != b.anonymous ||
      a.usesLayout != b.usesLayout)
    return false;
  if (a.fields.size() != b.fields.size() || a.methods.size() != b.methods.size() ||
      a.nested.size() != b.nested.size())
    return false;
  for (size_t i = 0; i < a.fields.size(); ++i) {
    if (a.fields[i].name != b.fields[i].name) return false;
    if (a.fields[i].init.has_value() != b.fields[i].init.has_value()) return false;
    if (a.fields[i].init && !exprEqual(*a.fields[i].init, *b.fields[i].init))
      return false;
  }
  for (size_t i = 0; i < a.methods.size(); ++i)
    if (!methodEqual(a.methods[i], b.methods[i])) return false;
  for (size_t i = 0; i < a.nested.size(); ++i)
    if (!classEqual(a.nested[i], b.nested[i])) return false;
  return true;
}

}  // namespace

bool structurallyEqual(const Program& a, const Program& b) {
  if (a.manifest.entryActivity != b.manifest.entryActivity ||
      a.manifest.activities != b.manifest.activities)
    return false;
  if (a.manifest.staticReceivers.size() != b.manifest.staticReceivers.size())
    return false;
  for (size_t i = 0; i < a.manifest.staticReceivers.size(); ++i) {
    if (a.manifest.staticReceivers[i].className !=
            b.manifest.staticReceivers[i].className ||
        a.manifest.staticReceivers[i].action != b.manifest.staticReceivers[i].action)
      return false;
  }
  if (a.layouts.size() != b.layouts.size() || a.classes.size() != b.classes.size())
    return false;
  for (size_t i = 0; i < a.layouts.size(); ++i) {
    if (a.layouts[i].id != b.layouts[i].id ||
        a.layouts[i].buttons.size() != b.layouts[i].buttons.size())
      return false;
    for (size_t j = 0; j < a.layouts[i].buttons.size(); ++j) {
      if (a.layouts[i].buttons[j].id != b.layouts[i].buttons[j].id ||
          a.layouts[i].buttons[j].onClickBinding !=
              b.layouts[i].buttons[j].onClickBinding)
        return false;
    }
  }
  for (size_t i = 0; i < a.classes.size(); ++i)
    if (!classEqual(a.classes[i], b.classes[i])) return false;
  return true;
}

ProgramIndex::ProgramIndex(const Program& program) : program_(&program) {
  for (const ClassDecl& cls : program.classes) indexClass(cls, -1, "");
}

void ProgramIndex::indexClass(const ClassDecl& decl, int parentId,
                              const std::string& prefix) {
  int id = static_cast<int>(classes_.size());
  ClassInfo info;
  info.decl = &decl;
  info.id = id;
  info.parentId = parentId;
  info.depth = parentId < 0 ? 0 : classes_[parentId].depth + 1;
  info.qualifiedName = prefix.empty() ? decl.name : prefix + "." + decl.name;
  classes_.push_back(info);

  for (size_t m = 0; m < decl.methods.size(); ++m) {
    MethodInfo mi;
    mi.decl = &decl.methods[m];
    mi.ref = MethodRef{id, static_cast<int>(m)};
    mi.qualifiedName = classes_[id].qualifiedName + "." + decl.methods[m].name;
    methods_.push_back(mi);
  }
  // Nested named classes, then anonymous classes hanging off statements.
  for (const ClassDecl& inner : decl.nested)
    indexClass(inner, id, classes_[id].qualifiedName);
  for (size_t m = 0; m < decl.methods.size(); ++m) {
    const MethodDecl& method = decl.methods[m];
    std::vector<const Stmt*> work;
    for (const Stmt& s : method.body) work.push_back(&s);
    for (size_t w = 0; w < work.size(); ++w) {
      const Stmt* s = work[w];
      if (s->anonClass) {
        int before = static_cast<int>(classes_.size());
        indexClass(*s->anonClass, id, classes_[id].qualifiedName);
        classes_[before].declaringStmt = s;
        classes_[before].declaringMethodClassId = id;
      }
      for (const Stmt& t : s->thenBlock) work.push_back(&t);
      for (const Stmt& t : s->elseBlock) work.push_back(&t);
    }
  }
}

const ProgramIndex::ClassInfo* ProgramIndex::findClass(
    const std::string& qualifiedName) const {
  for (const ClassInfo& info : classes_)
    if (info.qualifiedName == qualifiedName) return &info;
  return nullptr;
}

const ProgramIndex::ClassInfo* ProgramIndex::classInfoFor(
    const ClassDecl* decl) const {
  for (const ClassInfo& info : classes_)
    if (info.decl == decl) return &info;
  return nullptr;
}

const MethodDecl* ProgramIndex::method(const MethodRef& ref) const {
  const MethodInfo* info = methodInfo(ref);
  return info ? info->decl : nullptr;
}

const ProgramIndex::MethodInfo* ProgramIndex::methodInfo(
    const MethodRef& ref) const {
  for (const MethodInfo& info : methods_)
    if (info.ref == ref) return &info;
  return nullptr;
}

std::optional<MethodRef> ProgramIndex::findMethod(int classId,
                                                  const std::string& name) const {
  const ClassDecl* decl = classes_.at(classId).decl;
  for (size_t m = 0; m < decl->methods.size(); ++m)
    if (decl->methods[m].name == name)
      return MethodRef{classId, static_cast<int>(m)};
  return std::nullopt;
}

const ProgramIndex::ClassInfo* ProgramIndex::topLevelClass(
    const std::string& name) const {
  for (const ClassInfo& info : classes_)
    if (info.parentId < 0 && info.decl->name == name) return &info;
  return nullptr;
}

bool ProgramIndex::anonWithinAnon(int classId) const {
  const ClassInfo& info = classes_.at(classId);
  if (!info.decl->anonymous) return false;
  int parent = info.parentId;
  while (parent >= 0) {
    if (classes_[parent].decl->anonymous) return true;
    parent = classes_[parent].parentId;
  }
  return false;
}

std::optional<std::string> ProgramIndex::layoutFor(int classId) const {
  int id = classId;
  while (id >= 0) {
    if (classes_[id].decl->usesLayout) return classes_[id].decl->usesLayout;
    id = classes_[id].parentId;
  }
  return std::nullopt;
}

}  // namespace muse::applang
