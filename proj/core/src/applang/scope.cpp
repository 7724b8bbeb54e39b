#include "muse/applang/scope.hpp"

#include <algorithm>
#include <set>

namespace muse::applang {

std::string stmtPathKey(const StmtPath& path) {
  std::string out;
  for (size_t i = 0; i < path.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(path[i]);
  }
  return out;
}

const char* originName(Symbol::Origin origin) {
  switch (origin) {
    case Symbol::Origin::Local: return "local";
    case Symbol::Origin::Param: return "param";
    case Symbol::Origin::Field: return "field";
    case Symbol::Origin::EnclosingField: return "enclosing-field";
  }
  return "local";
}

ScopeTable::Key ScopeTable::key(const MethodRef& method, const StmtPath& path) {
  return std::to_string(method.classId) + "#" + std::to_string(method.methodIndex) +
         "#" + stmtPathKey(path);
}

void ScopeTable::put(const Key& key, std::vector<Symbol> symbols) {
  table_[key] = std::move(symbols);
}

const std::vector<Symbol>* ScopeTable::at(const Key& key) const {
  auto it = table_.find(key);
  return it == table_.end() ? nullptr : &it->second;
}

std::optional<Symbol> ScopeTable::lookup(const MethodRef& method,
                                         const StmtPath& path,
                                         const std::string& name) const {
  const std::vector<Symbol>* symbols = at(key(method, path));
  if (!symbols) return std::nullopt;
  for (const Symbol& sym : *symbols)
    if (sym.name == name) return sym;
  return std::nullopt;
}

std::optional<int> resolveClassRef(const ProgramIndex& index, int fromClassId,
                                   const std::string& name) {
  // Walk out from the referencing class: the ancestor itself, then its named
  // nested classes, then continue outward; finally the top level.
  int id = fromClassId;
  while (id >= 0) {
    const ProgramIndex::ClassInfo& info = index.classInfo(id);
    if (!info.decl->anonymous && info.decl->name == name) return id;
    for (const ProgramIndex::ClassInfo& candidate : index.classes()) {
      if (candidate.parentId == id && !candidate.decl->anonymous &&
          candidate.decl->name == name)
        return candidate.id;
    }
    id = info.parentId;
  }
  for (const ProgramIndex::ClassInfo& candidate : index.classes())
    if (candidate.parentId < 0 && candidate.decl->name == name) return candidate.id;
  return std::nullopt;
}

namespace {

class ScopeWalker {
 public:
  ScopeWalker(const Program& program, const ProgramIndex& index, ScopeResult& out)
      : program_(program), index_(index), out_(out) {}

  void run() {
    for (const ProgramIndex::MethodInfo& info : index_.methods()) walkMethod(info);
  }

 private:
  // Symbols visible at method entry: enclosing fields outermost-first so that
  // inner declarations shadow outer ones, then own fields, then params.
  std::vector<Symbol> methodEntryEnv(int classId) {
    std::vector<int> chain;
    for (int id = classId; id >= 0; id = index_.classInfo(id).parentId)
      chain.push_back(id);
    std::reverse(chain.begin(), chain.end());
    std::vector<Symbol> env;
    for (int id : chain) {
      const ClassDecl* decl = index_.classInfo(id).decl;
      for (const FieldDecl& field : decl->fields) {
        Symbol sym;
        sym.name = field.name;
        sym.origin =
            id == classId ? Symbol::Origin::Field : Symbol::Origin::EnclosingField;
        sym.classId = id;
        shadow(env, sym);
      }
    }
    return env;
  }

  static void shadow(std::vector<Symbol>& env, const Symbol& sym) {
    for (Symbol& existing : env) {
      if (existing.name == sym.name) {
        existing = sym;
        return;
      }
    }
    env.push_back(sym);
  }

  void walkMethod(const ProgramIndex::MethodInfo& info) {
    std::vector<Symbol> env = methodEntryEnv(info.ref.classId);
    for (const std::string& param : info.decl->params) {
      Symbol sym;
      sym.name = param;
      sym.origin = Symbol::Origin::Param;
      shadow(env, sym);
    }
    StmtPath path;
    walkBlock(info, info.decl->body, env, path);
  }

  void walkBlock(const ProgramIndex::MethodInfo& info,
                 const std::vector<Stmt>& block, std::vector<Symbol> env,
                 StmtPath& path) {
    for (size_t i = 0; i < block.size(); ++i) {
      const Stmt& stmt = block[i];
      path.push_back(static_cast<int>(i));
      out_.table.put(ScopeTable::key(info.ref, path), env);
      checkStmt(info, stmt, env, path);
      if (stmt.kind == StmtKind::VarDecl) {
        Symbol sym;
        sym.name = stmt.name;
        sym.origin = Symbol::Origin::Local;
        shadow(env, sym);
      }
      if (stmt.kind == StmtKind::If) {
        path.push_back(0);
        walkBlock(info, stmt.thenBlock, env, path);
        path.pop_back();
        if (stmt.hasElse) {
          path.push_back(1);
          walkBlock(info, stmt.elseBlock, env, path);
          path.pop_back();
        }
      }
      path.pop_back();
    }
  }

  void checkStmt(const ProgramIndex::MethodInfo& info, const Stmt& stmt,
                 const std::vector<Symbol>& env, const StmtPath& path) {
    auto resolve = [&](const std::string& name) {
      return std::any_of(env.begin(), env.end(),
                         [&](const Symbol& s) { return s.name == name; });
    };
    for (const Expr& expr : stmt.exprs) checkExpr(info, expr, env);
    if (stmt.kind == StmtKind::Assign && !resolve(stmt.name)) {
      report(stmt.loc, "assignment to unresolved variable '" + stmt.name + "' in " +
                           info.qualifiedName);
    }
    if (stmt.kind == StmtKind::Call) {
      std::optional<int> target =
          resolveClassRef(index_, info.ref.classId, stmt.name);
      if (!target) {
        report(stmt.loc, "call target class '" + stmt.name + "' is not visible from " +
                             info.qualifiedName);
      } else if (!index_.findMethod(*target, stmt.member)) {
        report(stmt.loc, "class '" + stmt.name + "' has no method '" + stmt.member +
                             "' (called from " + info.qualifiedName + ")");
      }
    }
    (void)path;
  }

  void checkExpr(const ProgramIndex::MethodInfo& info, const Expr& expr,
                 const std::vector<Symbol>& env) {
    if (expr.kind == ExprKind::VarRef) {
      bool found = std::any_of(env.begin(), env.end(),
                               [&](const Symbol& s) { return s.name == expr.text; });
      if (!found)
        report(expr.loc, "unresolved variable '" + expr.text + "' in " +
                             info.qualifiedName);
    }
    for (const Expr& arg : expr.args) checkExpr(info, arg, env);
  }

  void report(const SourceLoc& loc, const std::string& message) {
    out_.diagnostics.push_back({loc.unit, loc.line, loc.col, message});
  }

  const Program& program_;
  const ProgramIndex& index_;
  ScopeResult& out_;
};

// Field initializers may only reference earlier fields of the same chain;
// validated separately since they sit outside any method.
void checkFieldInits(const Program& program, const ProgramIndex& index,
                     ScopeResult& out) {
  for (const ProgramIndex::ClassInfo& info : index.classes()) {
    std::set<std::string> visible;
    for (int id = info.id; id >= 0; id = index.classInfo(id).parentId)
      for (const FieldDecl& field : index.classInfo(id).decl->fields)
        visible.insert(field.name);
    for (const FieldDecl& field : info.decl->fields) {
      if (!field.init) continue;
      std::vector<const Expr*> work{&*field.init};
      while (!work.empty()) {
        const Expr* e = work.back();
        work.pop_back();
        if (e->kind == ExprKind::VarRef && !visible.count(e->text))
          out.diagnostics.push_back({field.loc.unit, field.loc.line, field.loc.col,
                                     "unresolved variable '" + e->text +
                                         "' in initializer of field '" + field.name +
                                         "'"});
        for (const Expr& arg : e->args) work.push_back(&arg);
      }
    }
  }
}

}  // namespace

ScopeResult resolveScopes(const Program& program, const ProgramIndex& index) {
  ScopeResult result;
  ScopeWalker walker(program, index, result);
  walker.run();
  checkFieldInits(program, index, result);
  return result;
}

const char* registrationSiteName(RegistrationSite site) {
  switch (site) {
    case RegistrationSite::Lifecycle: return "lifecycle";
    case RegistrationSite::ManifestReceiver: return "manifest";
    case RegistrationSite::LayoutBinding: return "layout";
    case RegistrationSite::DynamicReceiver: return "dynamic-receiver";
    case RegistrationSite::DynamicListener: return "dynamic-listener";
    case RegistrationSite::AsyncClosure: return "async-closure";
    case RegistrationSite::Unregistered: return "unregistered";
  }
  return "unregistered";
}

CallbackInventory callbackInventory(const Program& program,
                                    const ProgramIndex& index) {
  CallbackInventory out;
  std::set<std::string> manifestReceivers;
  for (const Manifest::ReceiverReg& r : program.manifest.staticReceivers)
    manifestReceivers.insert(r.className);

  for (const ProgramIndex::ClassInfo& info : index.classes()) {
    const ClassDecl& cls = *info.decl;
    bool isAsyncClosure =
        info.declaringStmt && (info.declaringStmt->kind == StmtKind::RunOnUi ||
                               info.declaringStmt->kind == StmtKind::Submit ||
                               info.declaringStmt->kind == StmtKind::StartThread);
    for (size_t m = 0; m < cls.methods.size(); ++m) {
      const MethodDecl& method = cls.methods[m];
      bool closureRun = isAsyncClosure && method.name == "run";
      if (!method.isCallback && !closureRun) continue;
      CallbackEntry entry;
      entry.className = info.qualifiedName;
      entry.methodName = method.name;
      entry.callbackKind = method.name;
      entry.method = MethodRef{info.id, static_cast<int>(m)};
      if (closureRun) {
        entry.site = RegistrationSite::AsyncClosure;
        entry.nestedDynamic = index.anonWithinAnon(info.id);
      } else if (cls.kind == ClassKind::Activity || cls.kind == ClassKind::Fragment) {
        entry.site = RegistrationSite::Lifecycle;
      } else if (cls.kind == ClassKind::Receiver) {
        if (manifestReceivers.count(cls.name) && info.parentId < 0) {
          entry.site = RegistrationSite::ManifestReceiver;
        } else if (info.declaringStmt &&
                   info.declaringStmt->kind == StmtKind::RegisterReceiver) {
          entry.site = RegistrationSite::DynamicReceiver;
          entry.nestedDynamic = index.anonWithinAnon(info.id);
        } else {
          entry.site = RegistrationSite::Unregistered;
        }
      } else if (cls.kind == ClassKind::Listener) {
        if (info.declaringStmt && info.declaringStmt->kind == StmtKind::SetOnClick) {
          entry.site = RegistrationSite::DynamicListener;
          entry.nestedDynamic = index.anonWithinAnon(info.id);
        } else {
          entry.site = RegistrationSite::Unregistered;
        }
      } else {
        entry.site = RegistrationSite::Unregistered;
      }
      out.entries.push_back(std::move(entry));
    }
  }

  // Layout onClick bindings point at plain methods of the using class.
  for (const ProgramIndex::ClassInfo& info : index.classes()) {
    if (!info.decl->usesLayout) continue;
    for (const LayoutResource& layout : program.layouts) {
      if (layout.id != *info.decl->usesLayout) continue;
      for (const Button& button : layout.buttons) {
        if (!button.onClickBinding) continue;
        std::optional<MethodRef> method =
            index.findMethod(info.id, *button.onClickBinding);
        if (!method) {
          out.diagnostics.push_back(
              {button.loc.unit, button.loc.line, button.loc.col,
               "layout '" + layout.id + "' binds button '" + button.id +
                   "' to missing method '" + *button.onClickBinding + "' on class '" +
                   info.qualifiedName + "'"});
          continue;
        }
        CallbackEntry entry;
        entry.className = info.qualifiedName;
        entry.methodName = *button.onClickBinding;
        entry.callbackKind = "onClick";
        entry.site = RegistrationSite::LayoutBinding;
        entry.method = *method;
        out.entries.push_back(std::move(entry));
      }
    }
  }
  return out;
}

}  // namespace muse::applang
