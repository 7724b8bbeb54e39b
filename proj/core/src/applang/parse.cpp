#include "muse/applang/parse.hpp"

#include <cctype>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>

#include "muse/applang/scope.hpp"

namespace muse::applang {

std::string Diagnostic::str() const {
  std::string out = unit;
  out += ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + message;
  return out;
}

std::string joinDiagnostics(const DiagnosticList& diags) {
  std::string out;
  for (const Diagnostic& d : diags) {
    if (!out.empty()) out += "\n";
    out += d.str();
  }
  return out;
}

namespace {

enum class TokKind { Ident, String, Punct, End };

struct Token {
  TokKind kind = TokKind::End;
  std::string text;
  int line = 1;
  int col = 1;
};

class Lexer {
 public:
  Lexer(const std::string& unit, const std::string& text, DiagnosticList& diags)
      : unit_(unit), text_(text), diags_(diags) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skipSpace();
      if (pos_ >= text_.size()) break;
      char c = text_[pos_];
      Token tok;
      tok.line = line_;
      tok.col = col_;
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        tok.kind = TokKind::Ident;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                text_[pos_] == '_'))
          tok.text += take();
      } else if (c == '"') {
        tok.kind = TokKind::String;
        take();
        bool closed = false;
        while (pos_ < text_.size()) {
          char d = take();
          if (d == '"') {
            closed = true;
            break;
          }
          if (d == '\n') break;
          tok.text += d;
        }
        if (!closed)
          diags_.push_back({unit_, tok.line, tok.col, "unterminated string literal"});
      } else if (std::string("{}();,=+.").find(c) != std::string::npos) {
        tok.kind = TokKind::Punct;
        tok.text = take();
      } else {
        diags_.push_back({unit_, line_, col_,
                          std::string("unexpected character '") + c + "'"});
        take();
        continue;
      }
      out.push_back(std::move(tok));
    }
    Token end;
    end.kind = TokKind::End;
    end.line = line_;
    end.col = col_;
    out.push_back(end);
    return out;
  }

 private:
  char take() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skipSpace() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
        while (pos_ < text_.size() && text_[pos_] != '\n') take();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        take();
      } else {
        break;
      }
    }
  }

  const std::string& unit_;
  const std::string& text_;
  DiagnosticList& diags_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

struct ParsedUnit {
  std::optional<Manifest> manifest;
  std::vector<LayoutResource> layouts;
  std::vector<ClassDecl> classes;
};

class Parser {
 public:
  Parser(const std::string& unit, std::vector<Token> toks, DiagnosticList& diags,
         int& anonCounter)
      : unit_(unit), toks_(std::move(toks)), diags_(diags), anonCounter_(anonCounter) {}

  ParsedUnit run() {
    ParsedUnit out;
    while (!atEnd()) {
      const Token& t = peek();
      if (t.kind != TokKind::Ident) {
        error(t, "expected 'manifest', 'layout' or a class declaration");
        sync();
        continue;
      }
      if (t.text == "manifest") {
        Manifest m = parseManifest();
        if (out.manifest)
          error(t, "duplicate manifest in unit");
        else
          out.manifest = std::move(m);
      } else if (t.text == "layout") {
        out.layouts.push_back(parseLayout());
      } else if (classKindFromName(t.text)) {
        out.classes.push_back(parseClass());
      } else {
        error(t, "unknown top-level declaration '" + t.text + "'");
        sync();
      }
    }
    return out;
  }

 private:
  bool atEnd() const { return toks_[pos_].kind == TokKind::End; }
  const Token& peek(int ahead = 0) const {
    size_t i = pos_ + ahead;
    if (i >= toks_.size()) i = toks_.size() - 1;
    return toks_[i];
  }
  const Token& take() {
    const Token& t = toks_[pos_];
    if (!atEnd()) ++pos_;
    return t;
  }

  SourceLoc locOf(const Token& t) const { return SourceLoc{unit_, t.line, t.col}; }

  void error(const Token& t, const std::string& message) {
    diags_.push_back({unit_, t.line, t.col, message});
  }

  // Skips to the next plausible top-level start after a syntax error.
  void sync() {
    while (!atEnd()) {
      const Token& t = peek();
      if (t.kind == TokKind::Ident &&
          (t.text == "manifest" || t.text == "layout" || classKindFromName(t.text)))
        return;
      take();
    }
  }

  bool expectPunct(const std::string& p) {
    if (peek().kind == TokKind::Punct && peek().text == p) {
      take();
      return true;
    }
    error(peek(), "expected '" + p + "'");
    return false;
  }

  bool peekPunct(const std::string& p, int ahead = 0) const {
    return peek(ahead).kind == TokKind::Punct && peek(ahead).text == p;
  }

  bool peekIdent(const std::string& name, int ahead = 0) const {
    return peek(ahead).kind == TokKind::Ident && peek(ahead).text == name;
  }

  std::string expectIdent(const std::string& what) {
    if (peek().kind == TokKind::Ident) return take().text;
    error(peek(), "expected " + what);
    return "";
  }

  std::string expectString(const std::string& what) {
    if (peek().kind == TokKind::String) return take().text;
    error(peek(), "expected " + what);
    return "";
  }

  Manifest parseManifest() {
    Manifest m;
    m.loc = locOf(peek());
    take();  // manifest
    expectPunct("{");
    if (peekIdent("entry")) {
      take();
      m.entryActivity = expectIdent("entry activity name");
      expectPunct(";");
    } else {
      error(peek(), "manifest must start with an 'entry' declaration");
    }
    while (peekIdent("activity")) {
      take();
      m.activities.push_back(expectIdent("activity name"));
      expectPunct(";");
    }
    while (peekIdent("receiver")) {
      take();
      Manifest::ReceiverReg reg;
      reg.className = expectIdent("receiver class name");
      if (peekIdent("on"))
        take();
      else
        error(peek(), "expected 'on' after receiver name");
      reg.action = expectString("action string");
      m.staticReceivers.push_back(std::move(reg));
      expectPunct(";");
    }
    expectPunct("}");
    return m;
  }

  LayoutResource parseLayout() {
    LayoutResource layout;
    layout.loc = locOf(peek());
    take();  // layout
    layout.id = expectIdent("layout name");
    expectPunct("{");
    while (peekIdent("button")) {
      Button b;
      b.loc = locOf(peek());
      take();
      b.id = expectIdent("button name");
      if (peekIdent("onClick")) {
        take();
        expectPunct("=");
        b.onClickBinding = expectString("onClick method name");
      }
      expectPunct(";");
      layout.buttons.push_back(std::move(b));
    }
    expectPunct("}");
    return layout;
  }

  ClassDecl parseClass() {
    ClassDecl cls;
    cls.loc = locOf(peek());
    cls.kind = *classKindFromName(take().text);
    cls.name = expectIdent("class name");
    if (peekIdent("uses")) {
      take();
      cls.usesLayout = expectIdent("layout name");
    }
    expectPunct("{");
    parseMembers(cls);
    expectPunct("}");
    return cls;
  }

  void parseMembers(ClassDecl& cls) {
    while (!atEnd() && !peekPunct("}")) {
      const Token& t = peek();
      if (t.kind != TokKind::Ident) {
        error(t, "expected a member declaration");
        take();
        continue;
      }
      if (t.text == "var") {
        FieldDecl field;
        field.loc = locOf(t);
        take();
        field.name = expectIdent("field name");
        if (peekPunct("=")) {
          take();
          field.init = parseExpr();
        }
        expectPunct(";");
        cls.fields.push_back(std::move(field));
      } else if (classKindFromName(t.text) && peek(1).kind == TokKind::Ident &&
                 !peekPunct("(", 1)) {
        cls.nested.push_back(parseClass());
      } else {
        cls.methods.push_back(parseMethod());
      }
    }
  }

  MethodDecl parseMethod() {
    MethodDecl method;
    method.loc = locOf(peek());
    if (peekIdent("callback") && peek(1).kind == TokKind::Ident) {
      take();
      method.isCallback = true;
    }
    method.name = expectIdent("method name");
    expectPunct("(");
    if (!peekPunct(")")) {
      method.params.push_back(expectIdent("parameter name"));
      while (peekPunct(",")) {
        take();
        method.params.push_back(expectIdent("parameter name"));
      }
    }
    expectPunct(")");
    method.body = parseBlock();
    return method;
  }

  std::vector<Stmt> parseBlock() {
    std::vector<Stmt> body;
    expectPunct("{");
    while (!atEnd() && !peekPunct("}")) body.push_back(parseStmt());
    expectPunct("}");
    return body;
  }

  Stmt parseStmt() {
    const Token& t = peek();
    Stmt s;
    s.loc = locOf(t);
    if (t.kind != TokKind::Ident) {
      error(t, "expected a statement");
      take();
      return s;
    }
    if (t.text == "var") {
      take();
      s.kind = StmtKind::VarDecl;
      s.name = expectIdent("variable name");
      expectPunct("=");
      s.exprs.push_back(parseExpr());
      expectPunct(";");
      return s;
    }
    if (t.text == "log" && peekPunct("(", 1)) {
      take();
      s.kind = StmtKind::SinkCall;
      expectPunct("(");
      s.name = expectString("sink tag literal");
      expectPunct(",");
      s.exprs.push_back(parseExpr());
      expectPunct(")");
      expectPunct(";");
      return s;
    }
    if (t.text == "registerReceiver" && peekPunct("(", 1)) {
      take();
      s.kind = StmtKind::RegisterReceiver;
      expectPunct("(");
      s.anonClass = std::make_unique<ClassDecl>(parseAnonClass());
      expectPunct(",");
      s.name = expectString("broadcast action");
      expectPunct(")");
      expectPunct(";");
      return s;
    }
    if (t.text == "setOnClick" && peekPunct("(", 1)) {
      take();
      s.kind = StmtKind::SetOnClick;
      expectPunct("(");
      s.name = expectIdent("button name");
      expectPunct(",");
      s.anonClass = std::make_unique<ClassDecl>(parseAnonClass());
      expectPunct(")");
      expectPunct(";");
      return s;
    }
    if ((t.text == "runOnUi" || t.text == "submit" || t.text == "startThread") &&
        peekPunct("(", 1)) {
      take();
      s.kind = t.text == "runOnUi"   ? StmtKind::RunOnUi
               : t.text == "submit"  ? StmtKind::Submit
                                     : StmtKind::StartThread;
      expectPunct("(");
      s.anonClass = std::make_unique<ClassDecl>(parseAnonClass());
      expectPunct(")");
      expectPunct(";");
      return s;
    }
    if (t.text == "if" && peekPunct("(", 1)) {
      take();
      s.kind = StmtKind::If;
      expectPunct("(");
      std::string cond = expectIdent("branch condition");
      if (cond == "true")
        s.cond = Cond::True;
      else if (cond == "false")
        s.cond = Cond::False;
      else if (cond == "unknown")
        s.cond = Cond::Unknown;
      else
        error(t, "branch condition must be true, false or unknown");
      expectPunct(")");
      s.thenBlock = parseBlock();
      if (peekIdent("else")) {
        take();
        s.hasElse = true;
        s.elseBlock = parseBlock();
      }
      return s;
    }
    if (t.text == "return") {
      take();
      s.kind = StmtKind::Return;
      if (!peekPunct(";")) s.exprs.push_back(parseExpr());
      expectPunct(";");
      return s;
    }
    // Assignment or method call.
    std::string name = expectIdent("statement");
    if (peekPunct("=")) {
      take();
      s.kind = StmtKind::Assign;
      s.name = name;
      s.exprs.push_back(parseExpr());
      expectPunct(";");
      return s;
    }
    if (peekPunct(".")) {
      take();
      s.kind = StmtKind::Call;
      s.name = name;
      s.member = expectIdent("method name");
      expectPunct("(");
      if (!peekPunct(")")) {
        s.exprs.push_back(parseExpr());
        while (peekPunct(",")) {
          take();
          s.exprs.push_back(parseExpr());
        }
      }
      expectPunct(")");
      expectPunct(";");
      return s;
    }
    error(t, "unrecognized statement starting with '" + name + "'");
    while (!atEnd() && !peekPunct(";") && !peekPunct("}")) take();
    if (peekPunct(";")) take();
    return s;
  }

  ClassDecl parseAnonClass() {
    ClassDecl cls;
    const Token& t = peek();
    cls.loc = locOf(t);
    if (peekIdent("new"))
      take();
    else
      error(t, "expected 'new' to open an anonymous class");
    std::string kind = expectIdent("class kind");
    if (auto k = classKindFromName(kind))
      cls.kind = *k;
    else
      error(t, "unknown class kind '" + kind + "'");
    cls.anonymous = true;
    cls.name = "$anon" + std::to_string(anonCounter_++);
    expectPunct("{");
    while (!atEnd() && !peekPunct("}")) cls.methods.push_back(parseMethod());
    expectPunct("}");
    return cls;
  }

  Expr parseExpr() {
    Expr lhs = parsePrimary();
    while (peekPunct("+")) {
      SourceLoc loc = locOf(peek());
      take();
      Expr rhs = parsePrimary();
      Expr joined = Expr::concat(std::move(lhs), std::move(rhs));
      joined.loc = loc;
      lhs = std::move(joined);
    }
    return lhs;
  }

  Expr parsePrimary() {
    const Token& t = peek();
    if (t.kind == TokKind::String) {
      Expr e = Expr::lit(take().text);
      e.loc = locOf(t);
      return e;
    }
    if (t.kind == TokKind::Ident) {
      if ((t.text == "source" || t.text == "crypto") && peekPunct(".", 1)) {
        std::string base = take().text;
        take();  // .
        std::string api = expectIdent("api name");
        expectPunct("(");
        if (base == "source") {
          expectPunct(")");
          Expr e = Expr::sourceCall(api);
          e.loc = locOf(t);
          return e;
        }
        Expr arg = parseExpr();
        expectPunct(")");
        Expr e = Expr::cryptoCall(api, std::move(arg));
        e.loc = locOf(t);
        return e;
      }
      if (t.text == "rebuildChars" && peekPunct("(", 1)) {
        take();
        expectPunct("(");
        Expr inner = parseExpr();
        expectPunct(")");
        Expr e = Expr::rebuild(std::move(inner));
        e.loc = locOf(t);
        return e;
      }
      Expr e = Expr::var(take().text);
      e.loc = locOf(t);
      return e;
    }
    error(t, "expected an expression");
    take();
    return Expr::lit("");
  }

  const std::string& unit_;
  std::vector<Token> toks_;
  size_t pos_ = 0;
  DiagnosticList& diags_;
  int& anonCounter_;
};

// ---------------------------------------------------------------------------
// Post-parse validation

class Validator {
 public:
  Validator(const Program& program, DiagnosticList& diags)
      : program_(program), index_(program), diags_(diags) {}

  void run() {
    checkManifest();
    checkLayouts();
    checkClassTree();
    checkAnonShapes();
  }

 private:
  void report(const SourceLoc& loc, const std::string& message) {
    diags_.push_back({loc.unit, loc.line, loc.col, message});
  }

  const ClassDecl* topLevel(const std::string& name, ClassKind kind) {
    for (const ClassDecl& cls : program_.classes)
      if (cls.name == name && cls.kind == kind) return &cls;
    return nullptr;
  }

  void checkManifest() {
    const Manifest& m = program_.manifest;
    bool entryListed = false;
    for (const std::string& a : m.activities)
      if (a == m.entryActivity) entryListed = true;
    if (!entryListed)
      report(m.loc, "entry activity '" + m.entryActivity +
                        "' is not listed among the manifest activities");
    for (const std::string& a : m.activities)
      if (!topLevel(a, ClassKind::Activity))
        report(m.loc, "manifest activity '" + a +
                          "' does not resolve to a declared activity class");
    for (const Manifest::ReceiverReg& r : m.staticReceivers) {
      if (!topLevel(r.className, ClassKind::Receiver))
        report(m.loc, "manifest receiver '" + r.className +
                          "' does not resolve to a declared receiver class");
      if (r.action.empty())
        report(m.loc, "manifest receiver '" + r.className + "' has an empty action");
    }
  }

  void checkLayouts() {
    std::set<std::string> ids;
    for (const LayoutResource& layout : program_.layouts) {
      if (!ids.insert(layout.id).second)
        report(layout.loc, "duplicate layout '" + layout.id + "'");
      std::set<std::string> buttons;
      for (const Button& b : layout.buttons)
        if (!buttons.insert(b.id).second)
          report(b.loc, "duplicate button '" + b.id + "' in layout '" + layout.id + "'");
    }
  }

  void checkClassTree() {
    std::set<std::string> topNames;
    for (const ClassDecl& cls : program_.classes) {
      if (!topNames.insert(cls.name).second)
        report(cls.loc, "duplicate class name '" + cls.name + "'");
      checkClass(cls);
    }
  }

  void checkClass(const ClassDecl& cls) {
    if (cls.usesLayout) {
      bool found = false;
      for (const LayoutResource& layout : program_.layouts)
        if (layout.id == *cls.usesLayout) found = true;
      if (!found)
        report(cls.loc, "class '" + cls.name + "' uses unknown layout '" +
                            *cls.usesLayout + "'");
    }
    std::set<std::string> methodNames;
    for (const MethodDecl& method : cls.methods) {
      if (!methodNames.insert(method.name).second)
        report(method.loc,
               "duplicate method '" + method.name + "' in class '" + cls.name + "'");
      if (method.isCallback && !isCallbackName(cls.kind, method.name))
        report(method.loc, "'" + method.name + "' is not a valid callback for a " +
                               classKindName(cls.kind) + " class");
    }
    std::set<std::string> nestedNames;
    for (const ClassDecl& inner : cls.nested) {
      if (!nestedNames.insert(inner.name).second)
        report(inner.loc, "duplicate class name '" + inner.name + "' in class '" +
                              cls.name + "'");
      checkClass(inner);
    }
    // Anonymous classes count toward the same nesting level as named ones.
    for (const MethodDecl& method : cls.methods) forEachAnon(method.body, cls);
  }

  void forEachAnon(const std::vector<Stmt>& block, const ClassDecl& owner) {
    for (const Stmt& s : block) {
      if (s.anonClass) checkClass(*s.anonClass);
      forEachAnon(s.thenBlock, owner);
      forEachAnon(s.elseBlock, owner);
    }
  }

  void checkAnonShapes() {
    for (const ProgramIndex::ClassInfo& info : index_.classes()) {
      const Stmt* stmt = info.declaringStmt;
      if (!stmt) continue;
      const ClassDecl& cls = *info.decl;
      switch (stmt->kind) {
        case StmtKind::RegisterReceiver:
          if (cls.kind != ClassKind::Receiver || !hasCallback(cls, "onReceive"))
            report(cls.loc,
                   "registerReceiver needs an anonymous receiver with a "
                   "callback onReceive method");
          if (stmt->name.empty())
            report(stmt->loc, "registerReceiver action must be non-empty");
          break;
        case StmtKind::SetOnClick:
          if (cls.kind != ClassKind::Listener || !hasCallback(cls, "onClick"))
            report(cls.loc,
                   "setOnClick needs an anonymous listener with a callback "
                   "onClick method");
          checkButtonRef(*stmt, info);
          break;
        case StmtKind::RunOnUi:
        case StmtKind::Submit:
        case StmtKind::StartThread:
          if (cls.kind != ClassKind::Plain || cls.methods.size() != 1 ||
              cls.methods[0].name != "run")
            report(cls.loc,
                   "async closures must be plain anonymous classes with a "
                   "single run() method");
          break;
        default:
          break;
      }
    }
  }

  bool hasCallback(const ClassDecl& cls, const std::string& name) {
    for (const MethodDecl& m : cls.methods)
      if (m.name == name && m.isCallback) return true;
    return false;
  }

  void checkButtonRef(const Stmt& stmt, const ProgramIndex::ClassInfo& anonInfo) {
    // The button must live in the layout of the registering class chain.
    std::optional<std::string> layoutId =
        index_.layoutFor(anonInfo.declaringMethodClassId);
    if (!layoutId) {
      report(stmt.loc, "setOnClick('" + stmt.name +
                           "') in a class chain without a 'uses' layout");
      return;
    }
    for (const LayoutResource& layout : program_.layouts) {
      if (layout.id != *layoutId) continue;
      for (const Button& b : layout.buttons)
        if (b.id == stmt.name) return;
    }
    report(stmt.loc, "setOnClick references unknown button '" + stmt.name +
                         "' in layout '" + *layoutId + "'");
  }

  const Program& program_;
  ProgramIndex index_;
  DiagnosticList& diags_;
};

}  // namespace

ParseResult parseProgram(const std::vector<SourceUnit>& units) {
  ParseResult result;
  if (units.empty()) {
    result.diagnostics.push_back({"<input>", 0, 0, "no manifest"});
    return result;
  }

  Program program;
  bool haveManifest = false;
  int anonCounter = 0;
  for (const SourceUnit& unit : units) {
    program.unitOrder.push_back(unit.name);
    Lexer lexer(unit.name, unit.text, result.diagnostics);
    Parser parser(unit.name, lexer.run(), result.diagnostics, anonCounter);
    ParsedUnit parsed = parser.run();
    if (parsed.manifest) {
      if (haveManifest) {
        result.diagnostics.push_back(
            {unit.name, parsed.manifest->loc.line, parsed.manifest->loc.col,
             "duplicate manifest"});
      } else {
        program.manifest = std::move(*parsed.manifest);
        haveManifest = true;
      }
    }
    for (LayoutResource& l : parsed.layouts) program.layouts.push_back(std::move(l));
    for (ClassDecl& c : parsed.classes) program.classes.push_back(std::move(c));
  }
  if (!haveManifest)
    result.diagnostics.push_back({units.front().name, 0, 0, "no manifest"});

  if (!result.diagnostics.empty()) return result;

  Validator validator(program, result.diagnostics);
  validator.run();
  if (!result.diagnostics.empty()) return result;

  ProgramIndex index(program);
  ScopeResult scopes = resolveScopes(program, index);
  for (const Diagnostic& d : scopes.diagnostics) result.diagnostics.push_back(d);
  if (!result.diagnostics.empty()) return result;

  result.program = std::move(program);
  return result;
}

Program parseProgramOrThrow(const std::vector<SourceUnit>& units) {
  ParseResult result = parseProgram(units);
  if (!result.ok())
    throw std::runtime_error("parse failed:\n" + joinDiagnostics(result.diagnostics));
  return std::move(*result.program);
}

}  // namespace muse::applang
