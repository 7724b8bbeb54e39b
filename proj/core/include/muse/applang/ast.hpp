#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace muse::applang {

struct SourceLoc {
  std::string unit;
  int line = 0;
  int col = 0;
};

enum class ClassKind { Activity, Fragment, Receiver, Listener, Plain };

const char* classKindName(ClassKind kind);
std::optional<ClassKind> classKindFromName(const std::string& name);

/// Callback methods a class kind may declare (empty for plain classes).
const std::vector<std::string>& callbackSet(ClassKind kind);
bool isCallbackName(ClassKind kind, const std::string& method);

enum class ExprKind {
  StringLit,    // "..."
  VarRef,       // name
  Concat,       // a + b
  CharRebuild,  // rebuildChars(e); appears only in mutated programs
  SourceCall,   // source.<api>()
  CryptoCall,   // crypto.<api>(e)
};

struct Expr {
  ExprKind kind = ExprKind::StringLit;
  std::string text;  // literal value, variable name, or api name
  std::vector<Expr> args;
  SourceLoc loc;

  static Expr lit(std::string value);
  static Expr var(std::string name);
  static Expr concat(Expr lhs, Expr rhs);
  static Expr rebuild(Expr inner);
  static Expr sourceCall(std::string api);
  static Expr cryptoCall(std::string api, Expr arg);
};

enum class StmtKind {
  VarDecl,           // var name = expr;
  Assign,            // name = expr;
  Call,              // target.method(args);
  SinkCall,          // log("tag", expr);
  RegisterReceiver,  // registerReceiver(new receiver {...}, "action");
  SetOnClick,        // setOnClick(buttonId, new listener {...});
  RunOnUi,           // runOnUi(new class {...});
  Submit,            // submit(new class {...});
  StartThread,       // startThread(new class {...});
  If,                // if (true|false|unknown) {...} else {...}
  Return,            // return expr?;
};

enum class Cond { True, False, Unknown };

struct ClassDecl;

struct Stmt {
  StmtKind kind = StmtKind::Return;
  // VarDecl/Assign: variable name; Call: target class name;
  // SinkCall: tag literal; RegisterReceiver: action literal;
  // SetOnClick: button id.
  std::string name;
  std::string member;       // Call: method name
  std::vector<Expr> exprs;  // init / rhs / args / payload / return value
  Cond cond = Cond::Unknown;
  std::vector<Stmt> thenBlock;
  std::vector<Stmt> elseBlock;
  bool hasElse = false;
  std::unique_ptr<ClassDecl> anonClass;
  SourceLoc loc;

  Stmt() = default;
  Stmt(const Stmt& other);
  Stmt& operator=(const Stmt& other);
  Stmt(Stmt&&) noexcept = default;
  Stmt& operator=(Stmt&&) noexcept = default;
  ~Stmt();
};

struct FieldDecl {
  std::string name;
  std::optional<Expr> init;
  SourceLoc loc;
};

struct MethodDecl {
  std::string name;
  bool isCallback = false;  // declared with the `callback` keyword
  std::vector<std::string> params;
  std::vector<Stmt> body;
  SourceLoc loc;
};

struct ClassDecl {
  ClassKind kind = ClassKind::Plain;
  std::string name;  // parser-assigned "$anonN" for anonymous classes
  bool anonymous = false;
  std::optional<std::string> usesLayout;
  std::vector<FieldDecl> fields;
  std::vector<MethodDecl> methods;
  std::vector<ClassDecl> nested;
  SourceLoc loc;
};

struct Manifest {
  struct ReceiverReg {
    std::string className;
    std::string action;
  };
  std::string entryActivity;
  std::vector<std::string> activities;
  std::vector<ReceiverReg> staticReceivers;
  SourceLoc loc;
};

struct Button {
  std::string id;
  std::optional<std::string> onClickBinding;  // method name on the using class
  SourceLoc loc;
};

struct LayoutResource {
  std::string id;
  std::vector<Button> buttons;
  SourceLoc loc;
};

struct Program {
  Manifest manifest;
  std::vector<LayoutResource> layouts;
  std::vector<ClassDecl> classes;
  std::vector<std::string> unitOrder;  // per-unit file identity, parse order
};

bool structurallyEqual(const Program& a, const Program& b);

/// Identifies one method in a program independently of pointer identity.
struct MethodRef {
  int classId = -1;
  int methodIndex = -1;
  auto operator<=>(const MethodRef&) const = default;
};

/// Non-owning index over a Program: class ids, lexical parents, qualified
/// names. Rebuild after any structural change; ids are pre-order and stable
/// for a given tree shape.
class ProgramIndex {
 public:
  struct ClassInfo {
    const ClassDecl* decl = nullptr;
    int id = -1;
    int parentId = -1;  // lexical parent; -1 for top level
    int depth = 0;      // nesting depth, 0 for top level
    std::string qualifiedName;
    // Statement that declares this anonymous class, if any.
    const Stmt* declaringStmt = nullptr;
    int declaringMethodClassId = -1;
  };
  struct MethodInfo {
    const MethodDecl* decl = nullptr;
    MethodRef ref;
    std::string qualifiedName;
  };

  explicit ProgramIndex(const Program& program);

  const Program& program() const { return *program_; }
  const std::vector<ClassInfo>& classes() const { return classes_; }
  const std::vector<MethodInfo>& methods() const { return methods_; }

  const ClassInfo* findClass(const std::string& qualifiedName) const;
  const ClassInfo* classInfoFor(const ClassDecl* decl) const;
  const ClassInfo& classInfo(int id) const { return classes_.at(id); }
  const MethodDecl* method(const MethodRef& ref) const;
  const MethodInfo* methodInfo(const MethodRef& ref) const;
  std::optional<MethodRef> findMethod(int classId, const std::string& name) const;

  /// Top-level class declared in the manifest under `name`, or nullptr.
  const ClassInfo* topLevelClass(const std::string& name) const;

  /// True if the class or any lexical ancestor is anonymous-in-anonymous.
  bool anonWithinAnon(int classId) const;

  /// Innermost `uses` layout walking out from the class, if any.
  std::optional<std::string> layoutFor(int classId) const;

 private:
  void indexClass(const ClassDecl& decl, int parentId, const std::string& prefix);

  const Program* program_;
  std::vector<ClassInfo> classes_;
  std::vector<MethodInfo> methods_;
};

}  // namespace muse::applang
