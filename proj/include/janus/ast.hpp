#pragma once

#include "janus/diagnostics.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace janus {

// MiniSol: a strict Solidity subset. Contracts hold state variables of four
// kinds (uint, address, bool, mapping(address => scalar)), a constructor,
// modifiers made of guard statements, and public functions whose bodies are
// assignments, requires, if/else, revert, selfdestruct, local declarations
// and internal calls. Everything else is rejected at parse time.

enum class ScalarType { Numeric, Address, Boolean };

struct MsolType {
    bool is_mapping = false;
    ScalarType scalar = ScalarType::Numeric; // value type when mapping
    bool operator==(const MsolType&) const = default;
};

inline std::string type_name(const MsolType& t) {
    auto s = [](ScalarType k) {
        switch (k) {
        case ScalarType::Numeric: return "uint";
        case ScalarType::Address: return "address";
        case ScalarType::Boolean: return "bool";
        }
        return "?";
    };
    if (t.is_mapping) return std::string("mapping(address=>") + s(t.scalar) + ")";
    return s(t.scalar);
}

enum class ExprKind {
    NumberLit,
    BoolLit,
    AddressLit,   // address(N)
    Ident,        // state var, local, or parameter
    Index,        // mapping[key]
    MsgSender,
    MsgValue,
    BlockNumber,
    Unary,        // ! or unary -
    Binary,       // + - * == != < <= > >= && ||
};

enum class BinOp { Add, Sub, Mul, Eq, Ne, Lt, Le, Gt, Ge, And, Or };
enum class UnOp { Not, Neg };

struct Expr {
    ExprKind kind;
    SourceLoc loc;
    // literals
    std::int64_t number = 0;
    bool boolean = false;
    // identifiers
    std::string name;
    // operators
    BinOp bin = BinOp::Add;
    UnOp un = UnOp::Not;
    std::shared_ptr<Expr> lhs; // also index base target via `name`
    std::shared_ptr<Expr> rhs; // index key for Index
};

using ExprPtr = std::shared_ptr<Expr>;

enum class StmtKind {
    LocalDecl,    // type name = expr;
    Assign,       // lvalue = expr;
    CompoundAdd,  // lvalue += expr;
    CompoundSub,  // lvalue -= expr;
    Require,      // require(expr);
    If,           // if (expr) block [else block]
    Revert,       // revert();
    Selfdestruct, // selfdestruct(expr);
    Call,         // name(args);  internal call
    Placeholder,  // `_;` inside a modifier body
};

struct Stmt;
using StmtPtr = std::shared_ptr<Stmt>;

struct Stmt {
    StmtKind kind;
    SourceLoc loc;
    int ordinal = -1; // pre-order index within the declaring construct

    // LocalDecl
    MsolType decl_type;
    // LocalDecl / Call: `name`; Assign/Compound target var
    std::string name;
    ExprPtr index;              // mapping index of the assignment target, if any
    ExprPtr value;              // RHS / require cond / if cond / selfdestruct arg
    std::vector<ExprPtr> args;  // Call arguments
    std::vector<StmtPtr> body;  // If then-branch
    std::vector<StmtPtr> else_body;
};

struct Param {
    MsolType type; // scalar only
    std::string name;
    SourceLoc loc;
};

struct ModifierDecl {
    std::string name;
    SourceLoc loc;
    std::vector<StmtPtr> body; // guard statements; `_;` must be last
};

struct FunctionDecl {
    std::string name;
    SourceLoc loc;
    std::vector<Param> params;
    std::vector<std::string> modifiers;
    std::vector<StmtPtr> body;
    bool is_view = false;
    bool is_constructor = false;
};

struct StateVarDecl {
    std::string name;
    SourceLoc loc;
    MsolType type;
    ExprPtr initializer; // optional constant expression
};

struct ContractAST {
    std::string name;
    std::vector<StateVarDecl> state_vars;
    std::vector<FunctionDecl> functions; // declaration order, constructor excluded
    std::vector<ModifierDecl> modifiers;
    std::optional<FunctionDecl> constructor;

    const StateVarDecl* find_state_var(const std::string& n) const {
        for (const auto& v : state_vars)
            if (v.name == n) return &v;
        return nullptr;
    }
    const FunctionDecl* find_function(const std::string& n) const {
        for (const auto& f : functions)
            if (f.name == n) return &f;
        return nullptr;
    }
    const ModifierDecl* find_modifier(const std::string& n) const {
        for (const auto& m : modifiers)
            if (m.name == n) return &m;
        return nullptr;
    }
};

/// Statement identity: declaring construct (function, modifier or
/// constructor name) plus the statement's pre-order ordinal inside it.
struct StatementId {
    std::string construct;
    int ordinal = -1;
    auto operator<=>(const StatementId&) const = default;
};

inline std::string to_string(const StatementId& id) {
    return id.construct + "#" + std::to_string(id.ordinal);
}

ContractAST parse(const std::string& source);
std::string pretty_print(const ContractAST& ast);

// Expression helpers shared by the analyses.
void collect_idents(const Expr& e, std::vector<std::string>& out);
bool mentions_msg_sender(const Expr& e);

} // namespace janus
