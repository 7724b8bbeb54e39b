#include "muse/applang/render.hpp"

#include <sstream>

#include "muse/support/fingerprint.hpp"

namespace muse::applang {

namespace {

class Renderer {
 public:
  std::string render(const Program& program, const std::string& unit) {
    out_.str("");
    first_ = true;
    if (program.manifest.loc.unit == unit) renderManifest(program.manifest);
    for (const LayoutResource& layout : program.layouts)
      if (layout.loc.unit == unit) renderLayout(layout);
    for (const ClassDecl& cls : program.classes)
      if (cls.loc.unit == unit) renderClass(cls, 0);
    return out_.str();
  }

 private:
  void line(int indent, const std::string& text) {
    for (int i = 0; i < indent; ++i) out_ << "  ";
    out_ << text << "\n";
  }

  void renderManifest(const Manifest& m) {
    if (!first_) out_ << "\n";
    first_ = false;
    line(0, "manifest {");
    line(1, "entry " + m.entryActivity + ";");
    for (const std::string& a : m.activities) line(1, "activity " + a + ";");
    for (const Manifest::ReceiverReg& r : m.staticReceivers)
      line(1, "receiver " + r.className + " on \"" + r.action + "\";");
    line(0, "}");
  }

  void renderLayout(const LayoutResource& layout) {
    if (!first_) out_ << "\n";
    first_ = false;
    line(0, "layout " + layout.id + " {");
    for (const Button& b : layout.buttons) {
      std::string text = "button " + b.id;
      if (b.onClickBinding) text += " onClick = \"" + *b.onClickBinding + "\"";
      line(1, text + ";");
    }
    line(0, "}");
  }

  void renderClass(const ClassDecl& cls, int indent) {
    if (indent == 0) {
      if (!first_) out_ << "\n";
      first_ = false;
    }
    std::string head = std::string(classKindName(cls.kind)) + " " + cls.name;
    if (cls.usesLayout) head += " uses " + *cls.usesLayout;
    line(indent, head + " {");
    renderMembers(cls, indent + 1);
    line(indent, "}");
  }

  void renderMembers(const ClassDecl& cls, int indent) {
    for (const FieldDecl& field : cls.fields) {
      std::string text = "var " + field.name;
      if (field.init) text += " = " + renderExpr(*field.init);
      line(indent, text + ";");
    }
    for (const MethodDecl& method : cls.methods) renderMethod(method, indent);
    for (const ClassDecl& inner : cls.nested) renderClass(inner, indent);
  }

  void renderMethod(const MethodDecl& method, int indent) {
    std::string head;
    if (method.isCallback) head += "callback ";
    head += method.name + "(";
    for (size_t i = 0; i < method.params.size(); ++i) {
      if (i) head += ", ";
      head += method.params[i];
    }
    line(indent, head + ") {");
    renderBlock(method.body, indent + 1);
    line(indent, "}");
  }

  void renderBlock(const std::vector<Stmt>& block, int indent) {
    for (const Stmt& stmt : block) renderStmt(stmt, indent);
  }

  void renderStmt(const Stmt& stmt, int indent) {
    switch (stmt.kind) {
      case StmtKind::VarDecl:
        line(indent, "var " + stmt.name + " = " + renderExpr(stmt.exprs[0]) + ";");
        break;
      case StmtKind::Assign:
        line(indent, stmt.name + " = " + renderExpr(stmt.exprs[0]) + ";");
        break;
      case StmtKind::SinkCall:
        line(indent,
             "log(\"" + stmt.name + "\", " + renderExpr(stmt.exprs[0]) + ");");
        break;
      case StmtKind::Call: {
        std::string text = stmt.name + "." + stmt.member + "(";
        for (size_t i = 0; i < stmt.exprs.size(); ++i) {
          if (i) text += ", ";
          text += renderExpr(stmt.exprs[i]);
        }
        line(indent, text + ");");
        break;
      }
      case StmtKind::RegisterReceiver:
        line(indent, "registerReceiver(new receiver {");
        renderAnonBody(*stmt.anonClass, indent + 1);
        line(indent, "}, \"" + stmt.name + "\");");
        break;
      case StmtKind::SetOnClick:
        line(indent, "setOnClick(" + stmt.name + ", new listener {");
        renderAnonBody(*stmt.anonClass, indent + 1);
        line(indent, "});");
        break;
      case StmtKind::RunOnUi:
      case StmtKind::Submit:
      case StmtKind::StartThread: {
        const char* head = stmt.kind == StmtKind::RunOnUi  ? "runOnUi"
                           : stmt.kind == StmtKind::Submit ? "submit"
                                                           : "startThread";
        line(indent, std::string(head) + "(new class {");
        renderAnonBody(*stmt.anonClass, indent + 1);
        line(indent, "});");
        break;
      }
      case StmtKind::If: {
        const char* cond = stmt.cond == Cond::True    ? "true"
                           : stmt.cond == Cond::False ? "false"
                                                      : "unknown";
        line(indent, std::string("if (") + cond + ") {");
        renderBlock(stmt.thenBlock, indent + 1);
        if (stmt.hasElse) {
          line(indent, "} else {");
          renderBlock(stmt.elseBlock, indent + 1);
        }
        line(indent, "}");
        break;
      }
      case StmtKind::Return:
        if (stmt.exprs.empty())
          line(indent, "return;");
        else
          line(indent, "return " + renderExpr(stmt.exprs[0]) + ";");
        break;
    }
  }

  void renderAnonBody(const ClassDecl& cls, int indent) {
    for (const MethodDecl& method : cls.methods) renderMethod(method, indent);
  }

  std::ostringstream out_;
  bool first_ = true;
};

}  // namespace

std::string renderExpr(const Expr& expr) {
  switch (expr.kind) {
    case ExprKind::StringLit:
      return "\"" + expr.text + "\"";
    case ExprKind::VarRef:
      return expr.text;
    case ExprKind::Concat:
      return renderExpr(expr.args[0]) + " + " + renderExpr(expr.args[1]);
    case ExprKind::CharRebuild:
      return "rebuildChars(" + renderExpr(expr.args[0]) + ")";
    case ExprKind::SourceCall:
      return "source." + expr.text + "()";
    case ExprKind::CryptoCall:
      return "crypto." + expr.text + "(" + renderExpr(expr.args[0]) + ")";
  }
  return "\"\"";
}

std::vector<SourceUnit> renderProgram(const Program& program) {
  std::vector<std::string> units = program.unitOrder;
  if (units.empty()) units.push_back("program.al");

  // Declarations without a recorded unit (synthesized or injected nodes)
  // fall into the first unit.
  auto unitOf = [&](const std::string& u) -> const std::string& {
    for (const std::string& known : units)
      if (known == u) return u;
    return units.front();
  };

  Program remapped = program;
  remapped.manifest.loc.unit = unitOf(remapped.manifest.loc.unit);
  for (LayoutResource& layout : remapped.layouts)
    layout.loc.unit = unitOf(layout.loc.unit);
  for (ClassDecl& cls : remapped.classes) cls.loc.unit = unitOf(cls.loc.unit);

  std::vector<SourceUnit> out;
  Renderer renderer;
  for (const std::string& unit : units)
    out.push_back(SourceUnit{unit, renderer.render(remapped, unit)});
  return out;
}

std::string programFingerprint(const Program& program) {
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (const SourceUnit& unit : renderProgram(program)) {
    hash = support::fnv1a64(unit.name, hash);
    hash = support::fnv1a64("\n", hash);
    hash = support::fnv1a64(unit.text, hash);
    hash = support::fnv1a64(std::string_view("\0", 1), hash);
  }
  return support::toHex(hash);
}

}  // namespace muse::applang
