#include "janus/ast.hpp"

#include <sstream>

namespace janus {

namespace {

void print_expr(std::ostream& os, const Expr& e, int parent_prec);

int prec(BinOp op) {
    switch (op) {
    case BinOp::Or: return 1;
    case BinOp::And: return 2;
    case BinOp::Eq:
    case BinOp::Ne:
    case BinOp::Lt:
    case BinOp::Le:
    case BinOp::Gt:
    case BinOp::Ge: return 3;
    case BinOp::Add:
    case BinOp::Sub: return 4;
    case BinOp::Mul: return 5;
    }
    return 0;
}

const char* op_text(BinOp op) {
    switch (op) {
    case BinOp::Add: return "+";
    case BinOp::Sub: return "-";
    case BinOp::Mul: return "*";
    case BinOp::Eq: return "==";
    case BinOp::Ne: return "!=";
    case BinOp::Lt: return "<";
    case BinOp::Le: return "<=";
    case BinOp::Gt: return ">";
    case BinOp::Ge: return ">=";
    case BinOp::And: return "&&";
    case BinOp::Or: return "||";
    }
    return "?";
}

void print_expr(std::ostream& os, const Expr& e, int parent_prec) {
    switch (e.kind) {
    case ExprKind::NumberLit: os << e.number; break;
    case ExprKind::BoolLit: os << (e.boolean ? "true" : "false"); break;
    case ExprKind::AddressLit: os << "address(" << e.number << ")"; break;
    case ExprKind::Ident: os << e.name; break;
    case ExprKind::MsgSender: os << "msg.sender"; break;
    case ExprKind::MsgValue: os << "msg.value"; break;
    case ExprKind::BlockNumber: os << "block.number"; break;
    case ExprKind::Index:
        os << e.name << "[";
        print_expr(os, *e.rhs, 0);
        os << "]";
        break;
    case ExprKind::Unary:
        os << (e.un == UnOp::Not ? "!" : "-");
        os << "(";
        print_expr(os, *e.lhs, 0);
        os << ")";
        break;
    case ExprKind::Binary: {
        int p = prec(e.bin);
        if (p < parent_prec) os << "(";
        print_expr(os, *e.lhs, p);
        os << " " << op_text(e.bin) << " ";
        print_expr(os, *e.rhs, p + 1);
        if (p < parent_prec) os << ")";
        break;
    }
    }
}

void print_stmt(std::ostream& os, const Stmt& s, int indent) {
    std::string pad(static_cast<std::size_t>(indent) * 4, ' ');
    os << pad;
    switch (s.kind) {
    case StmtKind::LocalDecl:
        os << type_name(s.decl_type) << " " << s.name << " = ";
        print_expr(os, *s.value, 0);
        os << ";\n";
        break;
    case StmtKind::Assign:
    case StmtKind::CompoundAdd:
    case StmtKind::CompoundSub:
        os << s.name;
        if (s.index) {
            os << "[";
            print_expr(os, *s.index, 0);
            os << "]";
        }
        os << (s.kind == StmtKind::Assign ? " = "
               : s.kind == StmtKind::CompoundAdd ? " += " : " -= ");
        print_expr(os, *s.value, 0);
        os << ";\n";
        break;
    case StmtKind::Require:
        os << "require(";
        print_expr(os, *s.value, 0);
        os << ");\n";
        break;
    case StmtKind::If:
        os << "if (";
        print_expr(os, *s.value, 0);
        os << ") {\n";
        for (const auto& c : s.body) print_stmt(os, *c, indent + 1);
        os << pad << "}";
        if (!s.else_body.empty()) {
            os << " else {\n";
            for (const auto& c : s.else_body) print_stmt(os, *c, indent + 1);
            os << pad << "}";
        }
        os << "\n";
        break;
    case StmtKind::Revert:
        os << "revert();\n";
        break;
    case StmtKind::Selfdestruct:
        os << "selfdestruct(";
        print_expr(os, *s.value, 0);
        os << ");\n";
        break;
    case StmtKind::Call: {
        os << s.name << "(";
        bool first = true;
        for (const auto& a : s.args) {
            if (!first) os << ", ";
            first = false;
            print_expr(os, *a, 0);
        }
        os << ");\n";
        break;
    }
    case StmtKind::Placeholder:
        os << "_;\n";
        break;
    }
}

void print_function(std::ostream& os, const FunctionDecl& f) {
    os << "    ";
    if (f.is_constructor) os << "constructor(";
    else os << "function " << f.name << "(";
    bool first = true;
    for (const auto& p : f.params) {
        if (!first) os << ", ";
        first = false;
        os << type_name(p.type) << " " << p.name;
    }
    os << ")";
    if (!f.is_constructor) os << " public";
    if (f.is_view) os << " view";
    for (const auto& m : f.modifiers) os << " " << m;
    os << " {\n";
    for (const auto& s : f.body) print_stmt(os, *s, 2);
    os << "    }\n";
}

} // namespace

std::string pretty_print(const ContractAST& ast) {
    std::ostringstream os;
    os << "contract " << ast.name << " {\n";
    for (const auto& v : ast.state_vars) {
        os << "    " << type_name(v.type) << " " << v.name;
        if (v.initializer) {
            os << " = ";
            print_expr(os, *v.initializer, 0);
        }
        os << ";\n";
    }
    for (const auto& m : ast.modifiers) {
        os << "    modifier " << m.name << " {\n";
        for (const auto& s : m.body) print_stmt(os, *s, 2);
        os << "    }\n";
    }
    if (ast.constructor) print_function(os, *ast.constructor);
    for (const auto& f : ast.functions) print_function(os, f);
    os << "}\n";
    return os.str();
}

} // namespace janus
