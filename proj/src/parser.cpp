#include "janus/ast.hpp"
#include "janus/lexer.hpp"

#include <functional>
#include <set>

namespace janus {

namespace {

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    ContractAST parse_contract() {
        expect_ident("contract");
        ContractAST ast;
        ast.name = expect(TokKind::Ident).text;
        expect(TokKind::LBrace);
        while (!at(TokKind::RBrace)) {
            if (at_ident("constructor")) {
                if (ast.constructor)
                    throw err(DiagKind::Syntax, "duplicate constructor");
                ast.constructor = parse_function(/*ctor=*/true);
            } else if (at_ident("function")) {
                ast.functions.push_back(parse_function(false));
            } else if (at_ident("modifier")) {
                ast.modifiers.push_back(parse_modifier());
            } else {
                ast.state_vars.push_back(parse_state_var());
            }
        }
        expect(TokKind::RBrace);
        if (!at(TokKind::Eof))
            throw err(DiagKind::Syntax, "trailing input after contract");
        validate(ast);
        return ast;
    }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;

    const Token& cur() const { return toks_[pos_]; }
    bool at(TokKind k) const { return cur().kind == k; }
    bool at_ident(const std::string& s) const {
        return cur().kind == TokKind::Ident && cur().text == s;
    }
    Token take() { return toks_[pos_++]; }
    Token expect(TokKind k) {
        if (!at(k)) throw err(DiagKind::Syntax, "unexpected token '" + cur().text + "'");
        return take();
    }
    void expect_ident(const std::string& s) {
        if (!at_ident(s))
            throw err(DiagKind::Syntax, "expected '" + s + "', found '" + cur().text + "'");
        take();
    }
    ParseError err(DiagKind k, const std::string& msg) const {
        return ParseError(k, cur().loc, msg);
    }

    bool at_type() const {
        return at_ident("uint") || at_ident("uint256") || at_ident("address") ||
               at_ident("bool") || at_ident("mapping");
    }

    MsolType parse_type(bool allow_mapping) {
        SourceLoc loc = cur().loc;
        if (at_ident("mapping")) {
            if (!allow_mapping)
                throw ParseError(DiagKind::UnsupportedConstruct, loc,
                                 "unsupported construct: mapping-typed parameter or local");
            take();
            expect(TokKind::LParen);
            if (!at_ident("address"))
                throw ParseError(DiagKind::UnsupportedConstruct, cur().loc,
                                 "unsupported construct: mapping key type other than address");
            take();
            expect(TokKind::Arrow);
            MsolType t;
            t.is_mapping = true;
            if (at_ident("mapping"))
                throw ParseError(DiagKind::UnsupportedConstruct, cur().loc,
                                 "unsupported construct: nested mapping");
            t.scalar = parse_scalar();
            expect(TokKind::RParen);
            return t;
        }
        MsolType t;
        t.scalar = parse_scalar();
        return t;
    }

    ScalarType parse_scalar() {
        if (at_ident("uint") || at_ident("uint256")) { take(); return ScalarType::Numeric; }
        if (at_ident("address")) { take(); return ScalarType::Address; }
        if (at_ident("bool")) { take(); return ScalarType::Boolean; }
        throw err(DiagKind::Syntax, "expected a type, found '" + cur().text + "'");
    }

    StateVarDecl parse_state_var() {
        StateVarDecl v;
        v.loc = cur().loc;
        if (!at_type())
            throw err(DiagKind::Syntax, "expected a contract member, found '" + cur().text + "'");
        v.type = parse_type(true);
        if (at_ident("public")) take(); // state-var visibility is cosmetic
        v.name = expect(TokKind::Ident).text;
        if (at(TokKind::Assign)) {
            take();
            v.initializer = parse_expr();
        }
        expect(TokKind::Semi);
        return v;
    }

    FunctionDecl parse_function(bool ctor) {
        FunctionDecl f;
        f.loc = cur().loc;
        f.is_constructor = ctor;
        take(); // 'constructor' or 'function'
        if (!ctor) f.name = expect(TokKind::Ident).text;
        else f.name = "constructor";
        expect(TokKind::LParen);
        while (!at(TokKind::RParen)) {
            Param p;
            p.loc = cur().loc;
            p.type = parse_type(false);
            p.name = expect(TokKind::Ident).text;
            f.params.push_back(std::move(p));
            if (!at(TokKind::RParen)) expect(TokKind::Comma);
        }
        expect(TokKind::RParen);
        while (at(TokKind::Ident) && !at(TokKind::LBrace)) {
            if (at_ident("public")) { take(); continue; }
            if (at_ident("view")) { f.is_view = true; take(); continue; }
            // modifier invocation, optionally with empty parens
            std::string m = take().text;
            if (at(TokKind::LParen)) {
                take();
                if (!at(TokKind::RParen))
                    throw ParseError(DiagKind::UnsupportedConstruct, cur().loc,
                                     "unsupported construct: modifier arguments");
                take();
            }
            f.modifiers.push_back(m);
        }
        f.body = parse_block(/*in_modifier=*/false);
        number_statements(f.body);
        return f;
    }

    ModifierDecl parse_modifier() {
        ModifierDecl m;
        m.loc = cur().loc;
        take(); // 'modifier'
        m.name = expect(TokKind::Ident).text;
        if (at(TokKind::LParen)) {
            take();
            if (!at(TokKind::RParen))
                throw ParseError(DiagKind::UnsupportedConstruct, cur().loc,
                                 "unsupported construct: modifier parameters");
            take();
        }
        m.body = parse_block(/*in_modifier=*/true);
        if (m.body.empty() || m.body.back()->kind != StmtKind::Placeholder)
            throw ParseError(DiagKind::UnsupportedConstruct, m.loc,
                             "unsupported construct: modifier without trailing '_;'");
        for (std::size_t i = 0; i + 1 < m.body.size(); ++i)
            if (m.body[i]->kind == StmtKind::Placeholder)
                throw ParseError(DiagKind::UnsupportedConstruct, m.body[i]->loc,
                                 "unsupported construct: statements after '_;' in modifier");
        number_statements(m.body);
        return m;
    }

    std::vector<StmtPtr> parse_block(bool in_modifier) {
        expect(TokKind::LBrace);
        std::vector<StmtPtr> stmts;
        while (!at(TokKind::RBrace)) stmts.push_back(parse_stmt(in_modifier));
        expect(TokKind::RBrace);
        return stmts;
    }

    StmtPtr parse_stmt(bool in_modifier) {
        auto s = std::make_shared<Stmt>();
        s->loc = cur().loc;
        if (at_ident("_") && toks_[pos_ + 1].kind == TokKind::Semi) {
            if (!in_modifier)
                throw err(DiagKind::Syntax, "'_;' is only valid inside a modifier");
            take();
            take();
            s->kind = StmtKind::Placeholder;
            return s;
        }
        if (at_ident("require")) {
            take();
            expect(TokKind::LParen);
            s->kind = StmtKind::Require;
            s->value = parse_expr();
            expect(TokKind::RParen);
            expect(TokKind::Semi);
            return s;
        }
        if (at_ident("revert")) {
            take();
            expect(TokKind::LParen);
            expect(TokKind::RParen);
            expect(TokKind::Semi);
            s->kind = StmtKind::Revert;
            return s;
        }
        if (at_ident("selfdestruct")) {
            take();
            expect(TokKind::LParen);
            s->kind = StmtKind::Selfdestruct;
            s->value = parse_expr();
            expect(TokKind::RParen);
            expect(TokKind::Semi);
            return s;
        }
        if (at_ident("if")) {
            take();
            expect(TokKind::LParen);
            s->kind = StmtKind::If;
            s->value = parse_expr();
            expect(TokKind::RParen);
            s->body = parse_block(in_modifier);
            if (at_ident("else")) {
                take();
                if (at_ident("if")) {
                    s->else_body.push_back(parse_stmt(in_modifier));
                } else {
                    s->else_body = parse_block(in_modifier);
                }
            }
            return s;
        }
        if (at_type()) {
            // local declaration (scalar only)
            s->kind = StmtKind::LocalDecl;
            s->decl_type = parse_type(false);
            s->name = expect(TokKind::Ident).text;
            expect(TokKind::Assign);
            s->value = parse_expr();
            expect(TokKind::Semi);
            return s;
        }
        if (at(TokKind::Ident)) {
            std::string name = take().text;
            if (name == "msg.sender" || name == "msg.value" || name == "block.number")
                throw err(DiagKind::Syntax, "cannot assign to builtin '" + name + "'");
            s->name = name;
            if (at(TokKind::LParen)) {
                take();
                s->kind = StmtKind::Call;
                while (!at(TokKind::RParen)) {
                    s->args.push_back(parse_expr());
                    if (!at(TokKind::RParen)) expect(TokKind::Comma);
                }
                take();
                expect(TokKind::Semi);
                return s;
            }
            if (at(TokKind::LBracket)) {
                take();
                s->index = parse_expr();
                expect(TokKind::RBracket);
            }
            if (at(TokKind::PlusEq)) s->kind = StmtKind::CompoundAdd;
            else if (at(TokKind::MinusEq)) s->kind = StmtKind::CompoundSub;
            else if (at(TokKind::Assign)) s->kind = StmtKind::Assign;
            else throw err(DiagKind::Syntax, "expected '=', '+=' or '-=' in statement");
            take();
            s->value = parse_expr();
            expect(TokKind::Semi);
            return s;
        }
        throw err(DiagKind::Syntax, "expected a statement, found '" + cur().text + "'");
    }

    // expr := or
    ExprPtr parse_expr() { return parse_or(); }

    ExprPtr parse_or() {
        ExprPtr e = parse_and();
        while (at(TokKind::OrOr)) {
            SourceLoc loc = take().loc;
            e = make_bin(BinOp::Or, e, parse_and(), loc);
        }
        return e;
    }

    ExprPtr parse_and() {
        ExprPtr e = parse_cmp();
        while (at(TokKind::AndAnd)) {
            SourceLoc loc = take().loc;
            e = make_bin(BinOp::And, e, parse_cmp(), loc);
        }
        return e;
    }

    ExprPtr parse_cmp() {
        ExprPtr e = parse_add();
        for (;;) {
            BinOp op;
            if (at(TokKind::EqEq)) op = BinOp::Eq;
            else if (at(TokKind::BangEq)) op = BinOp::Ne;
            else if (at(TokKind::Lt)) op = BinOp::Lt;
            else if (at(TokKind::Le)) op = BinOp::Le;
            else if (at(TokKind::Gt)) op = BinOp::Gt;
            else if (at(TokKind::Ge)) op = BinOp::Ge;
            else return e;
            SourceLoc loc = take().loc;
            e = make_bin(op, e, parse_add(), loc);
        }
    }

    ExprPtr parse_add() {
        ExprPtr e = parse_mul();
        for (;;) {
            if (at(TokKind::Plus)) {
                SourceLoc loc = take().loc;
                e = make_bin(BinOp::Add, e, parse_mul(), loc);
            } else if (at(TokKind::Minus)) {
                SourceLoc loc = take().loc;
                e = make_bin(BinOp::Sub, e, parse_mul(), loc);
            } else {
                return e;
            }
        }
    }

    ExprPtr parse_mul() {
        ExprPtr e = parse_unary();
        while (at(TokKind::Star)) {
            SourceLoc loc = take().loc;
            e = make_bin(BinOp::Mul, e, parse_unary(), loc);
        }
        return e;
    }

    ExprPtr parse_unary() {
        if (at(TokKind::Bang)) {
            SourceLoc loc = take().loc;
            auto e = std::make_shared<Expr>();
            e->kind = ExprKind::Unary;
            e->un = UnOp::Not;
            e->loc = loc;
            e->lhs = parse_unary();
            return e;
        }
        if (at(TokKind::Minus)) {
            SourceLoc loc = take().loc;
            auto e = std::make_shared<Expr>();
            e->kind = ExprKind::Unary;
            e->un = UnOp::Neg;
            e->loc = loc;
            e->lhs = parse_unary();
            return e;
        }
        return parse_primary();
    }

    ExprPtr parse_primary() {
        auto e = std::make_shared<Expr>();
        e->loc = cur().loc;
        if (at(TokKind::Number)) {
            e->kind = ExprKind::NumberLit;
            e->number = take().number;
            return e;
        }
        if (at(TokKind::LParen)) {
            take();
            ExprPtr inner = parse_expr();
            expect(TokKind::RParen);
            return inner;
        }
        if (at(TokKind::Ident)) {
            std::string name = cur().text;
            if (name == "true" || name == "false") {
                take();
                e->kind = ExprKind::BoolLit;
                e->boolean = (name == "true");
                return e;
            }
            if (name == "msg.sender") { take(); e->kind = ExprKind::MsgSender; return e; }
            if (name == "msg.value") { take(); e->kind = ExprKind::MsgValue; return e; }
            if (name == "block.number") { take(); e->kind = ExprKind::BlockNumber; return e; }
            if (name == "address") {
                // address(N) literal
                take();
                expect(TokKind::LParen);
                e->kind = ExprKind::AddressLit;
                e->number = expect(TokKind::Number).number;
                expect(TokKind::RParen);
                return e;
            }
            take();
            if (at(TokKind::LBracket)) {
                take();
                e->kind = ExprKind::Index;
                e->name = name;
                e->rhs = parse_expr();
                expect(TokKind::RBracket);
                return e;
            }
            if (at(TokKind::LParen))
                throw ParseError(DiagKind::UnsupportedConstruct, e->loc,
                                 "unsupported construct: call expression (calls are statements)");
            e->kind = ExprKind::Ident;
            e->name = name;
            return e;
        }
        throw err(DiagKind::Syntax, "expected an expression, found '" + cur().text + "'");
    }

    static ExprPtr make_bin(BinOp op, ExprPtr l, ExprPtr r, SourceLoc loc) {
        auto e = std::make_shared<Expr>();
        e->kind = ExprKind::Binary;
        e->bin = op;
        e->lhs = std::move(l);
        e->rhs = std::move(r);
        e->loc = loc;
        return e;
    }

    static void number_statements(std::vector<StmtPtr>& body) {
        int counter = 0;
        std::function<void(std::vector<StmtPtr>&)> walk = [&](std::vector<StmtPtr>& stmts) {
            for (auto& s : stmts) {
                s->ordinal = counter++;
                walk(s->body);
                walk(s->else_body);
            }
        };
        walk(body);
    }

    // ---- validation ---------------------------------------------------

    void validate(ContractAST& ast) {
        std::set<std::string> var_names;
        for (const auto& v : ast.state_vars) {
            if (!var_names.insert(v.name).second)
                throw ParseError(DiagKind::Validation, v.loc,
                                 "duplicate state variable '" + v.name + "'");
            if (v.initializer) check_const_expr(*v.initializer);
        }
        std::set<std::string> fn_names;
        for (const auto& f : ast.functions) {
            if (!fn_names.insert(f.name).second)
                throw ParseError(DiagKind::Validation, f.loc,
                                 "duplicate function '" + f.name + "'");
            if (var_names.count(f.name))
                throw ParseError(DiagKind::Validation, f.loc,
                                 "function '" + f.name + "' shadows a state variable");
        }
        for (const auto& f : ast.functions) validate_function(ast, f);
        if (ast.constructor) {
            if (!ast.constructor->modifiers.empty())
                throw ParseError(DiagKind::Validation, ast.constructor->loc,
                                 "constructor cannot carry modifiers");
            validate_function(ast, *ast.constructor);
        }
        for (const auto& m : ast.modifiers) {
            std::set<std::string> locals;
            for (const auto& s : m.body) validate_stmt(ast, m.name, {}, locals, *s, true);
        }
        check_call_graph(ast);
    }

    void validate_function(const ContractAST& ast, const FunctionDecl& f) {
        for (const auto& m : f.modifiers)
            if (!ast.find_modifier(m))
                throw ParseError(DiagKind::Validation, f.loc,
                                 "function '" + f.name + "' references undeclared modifier '" +
                                     m + "'");
        std::set<std::string> params;
        for (const auto& p : f.params) {
            if (!params.insert(p.name).second)
                throw ParseError(DiagKind::Validation, p.loc,
                                 "duplicate parameter '" + p.name + "'");
        }
        std::set<std::string> locals;
        for (const auto& s : f.body) validate_stmt(ast, f.name, params, locals, *s, false);
        if (f.is_view) {
            for (const auto& s : f.body)
                if (writes_state(ast, *s))
                    throw ParseError(DiagKind::Validation, s->loc,
                                     "view function '" + f.name + "' writes state");
        }
    }

    bool writes_state(const ContractAST& ast, const Stmt& s) const {
        if ((s.kind == StmtKind::Assign || s.kind == StmtKind::CompoundAdd ||
             s.kind == StmtKind::CompoundSub) &&
            ast.find_state_var(s.name))
            return true;
        if (s.kind == StmtKind::Selfdestruct || s.kind == StmtKind::Call) return true;
        for (const auto& c : s.body)
            if (writes_state(ast, *c)) return true;
        for (const auto& c : s.else_body)
            if (writes_state(ast, *c)) return true;
        return false;
    }

    void validate_stmt(const ContractAST& ast, const std::string& fn,
                       const std::set<std::string>& params, std::set<std::string>& locals,
                       const Stmt& s, bool in_modifier) {
        auto resolve = [&](const std::string& n, SourceLoc loc) {
            if (params.count(n) || locals.count(n) || ast.find_state_var(n)) return;
            throw ParseError(DiagKind::Validation, loc,
                             "unresolved identifier '" + n + "' in '" + fn + "'");
        };
        auto check_expr_idents = [&](const Expr& e) {
            std::vector<std::string> ids;
            collect_idents(e, ids);
            for (const auto& id : ids) resolve(id, e.loc);
        };
        switch (s.kind) {
        case StmtKind::LocalDecl:
            check_expr_idents(*s.value);
            if (params.count(s.name) || ast.find_state_var(s.name))
                throw ParseError(DiagKind::Validation, s.loc,
                                 "local '" + s.name + "' shadows another name");
            locals.insert(s.name);
            break;
        case StmtKind::Assign:
        case StmtKind::CompoundAdd:
        case StmtKind::CompoundSub: {
            resolve(s.name, s.loc);
            const StateVarDecl* sv = ast.find_state_var(s.name);
            if (s.index) {
                if (!sv || !sv->type.is_mapping)
                    throw ParseError(DiagKind::Validation, s.loc,
                                     "indexed assignment to non-mapping '" + s.name + "'");
                check_expr_idents(*s.index);
            } else if (sv && sv->type.is_mapping) {
                throw ParseError(DiagKind::Validation, s.loc,
                                 "whole-mapping assignment to '" + s.name + "'");
            }
            check_expr_idents(*s.value);
            break;
        }
        case StmtKind::Require:
        case StmtKind::Selfdestruct:
            check_expr_idents(*s.value);
            break;
        case StmtKind::If:
            check_expr_idents(*s.value);
            for (const auto& c : s.body) validate_stmt(ast, fn, params, locals, *c, in_modifier);
            for (const auto& c : s.else_body)
                validate_stmt(ast, fn, params, locals, *c, in_modifier);
            break;
        case StmtKind::Revert:
        case StmtKind::Placeholder:
            break;
        case StmtKind::Call: {
            const FunctionDecl* callee = ast.find_function(s.name);
            if (!callee)
                throw ParseError(DiagKind::Validation, s.loc,
                                 "call to undeclared function '" + s.name + "'");
            if (callee->params.size() != s.args.size())
                throw ParseError(DiagKind::Validation, s.loc,
                                 "call to '" + s.name + "' with wrong argument count");
            for (const auto& a : s.args) check_expr_idents(*a);
            break;
        }
        }
    }

    void check_const_expr(const Expr& e) {
        switch (e.kind) {
        case ExprKind::NumberLit:
        case ExprKind::BoolLit:
        case ExprKind::AddressLit:
            return;
        default:
            throw ParseError(DiagKind::Validation, e.loc,
                             "state variable initializer must be a constant");
        }
    }

    void check_call_graph(const ContractAST& ast) {
        // Internal calls must be acyclic so the engine can inline them.
        std::function<void(const std::string&, std::vector<std::string>&)> dfs =
            [&](const std::string& fn, std::vector<std::string>& stack) {
                for (const auto& seen : stack)
                    if (seen == fn)
                        throw ParseError(DiagKind::UnsupportedConstruct, SourceLoc{},
                                         "unsupported construct: recursive call involving '" +
                                             fn + "'");
                const FunctionDecl* f = ast.find_function(fn);
                if (!f) return;
                stack.push_back(fn);
                std::function<void(const Stmt&)> walk = [&](const Stmt& s) {
                    if (s.kind == StmtKind::Call) dfs(s.name, stack);
                    for (const auto& c : s.body) walk(*c);
                    for (const auto& c : s.else_body) walk(*c);
                };
                for (const auto& s : f->body) walk(*s);
                stack.pop_back();
            };
        for (const auto& f : ast.functions) {
            std::vector<std::string> stack;
            dfs(f.name, stack);
        }
    }
};

} // namespace

void collect_idents(const Expr& e, std::vector<std::string>& out) {
    switch (e.kind) {
    case ExprKind::Ident:
        out.push_back(e.name);
        break;
    case ExprKind::Index:
        out.push_back(e.name);
        collect_idents(*e.rhs, out);
        break;
    case ExprKind::Unary:
        collect_idents(*e.lhs, out);
        break;
    case ExprKind::Binary:
        collect_idents(*e.lhs, out);
        collect_idents(*e.rhs, out);
        break;
    default:
        break;
    }
}

bool mentions_msg_sender(const Expr& e) {
    switch (e.kind) {
    case ExprKind::MsgSender:
        return true;
    case ExprKind::Index:
        return mentions_msg_sender(*e.rhs);
    case ExprKind::Unary:
        return mentions_msg_sender(*e.lhs);
    case ExprKind::Binary:
        return mentions_msg_sender(*e.lhs) || mentions_msg_sender(*e.rhs);
    default:
        return false;
    }
}

ContractAST parse(const std::string& source) {
    Lexer lex(source);
    Parser p(lex.tokenize());
    return p.parse_contract();
}

} // namespace janus
