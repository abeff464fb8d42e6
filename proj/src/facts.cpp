#include "janus/facts.hpp"

#include <functional>

namespace janus {

namespace {

struct TokenSets {
    std::set<std::string> state_vars;
    std::set<std::string> consts;
    std::set<std::string> params; // parameter and builtin tokens
    bool caller = false;

    void merge(const TokenSets& o) {
        state_vars.insert(o.state_vars.begin(), o.state_vars.end());
        consts.insert(o.consts.begin(), o.consts.end());
        params.insert(o.params.begin(), o.params.end());
        caller = caller || o.caller;
    }
};

class FactsBuilder {
public:
    explicit FactsBuilder(const ContractAST& ast) : ast_(ast) {}

    DependenceFacts build() {
        for (const auto& m : ast_.modifiers) analyze_construct(m.name, m.body, {}, {});
        if (ast_.constructor)
            analyze_construct("constructor", ast_.constructor->body,
                              param_names(*ast_.constructor), {});
        for (const auto& f : ast_.functions) {
            TokenSets base = modifier_guards(f);
            analyze_construct(f.name, f.body, param_names(f), base);
        }
        for (const auto& f : ast_.functions) {
            expand_function(f.name);
            std::vector<std::string> stack;
            collect_expanded(f.name, f.name, stack);
        }
        if (ast_.constructor) {
            expand_function("constructor");
            std::vector<std::string> stack;
            collect_expanded("constructor", "constructor", stack);
        }
        return std::move(facts_);
    }

private:
    const ContractAST& ast_;
    DependenceFacts facts_;
    // local var -> reaching tokens, per construct being analyzed
    std::map<std::string, TokenSets> local_deps_;
    std::set<std::string> current_params_;

    static std::set<std::string> param_names(const FunctionDecl& f) {
        std::set<std::string> out;
        for (const auto& p : f.params) out.insert(p.name);
        return out;
    }

    TokenSets modifier_guards(const FunctionDecl& f) const {
        TokenSets out;
        for (const auto& mn : f.modifiers) {
            const ModifierDecl* m = ast_.find_modifier(mn);
            if (!m) continue;
            for (const auto& s : m->body)
                if (s->kind == StmtKind::Require || s->kind == StmtKind::If)
                    collect_expr(*s->value, out, /*locals=*/nullptr);
        }
        return out;
    }

    void collect_expr(const Expr& e, TokenSets& out,
                      const std::map<std::string, TokenSets>* locals) const {
        switch (e.kind) {
        case ExprKind::NumberLit:
            out.consts.insert(std::to_string(e.number));
            break;
        case ExprKind::BoolLit:
            out.consts.insert(e.boolean ? "true" : "false");
            break;
        case ExprKind::AddressLit:
            out.consts.insert("address(" + std::to_string(e.number) + ")");
            break;
        case ExprKind::Ident:
            if (ast_.find_state_var(e.name)) out.state_vars.insert(e.name);
            else if (locals && locals->count(e.name)) out.merge(locals->at(e.name));
            else out.params.insert(e.name);
            break;
        case ExprKind::Index:
            out.state_vars.insert(e.name); // mapping read = read of the whole variable
            collect_expr(*e.rhs, out, locals);
            break;
        case ExprKind::MsgSender:
            out.caller = true;
            out.params.insert("msg.sender");
            break;
        case ExprKind::MsgValue:
            out.params.insert("msg.value");
            break;
        case ExprKind::BlockNumber:
            out.params.insert("block.number");
            break;
        case ExprKind::Unary:
            collect_expr(*e.lhs, out, locals);
            break;
        case ExprKind::Binary:
            collect_expr(*e.lhs, out, locals);
            collect_expr(*e.rhs, out, locals);
            break;
        }
    }

    void analyze_construct(const std::string& name, const std::vector<StmtPtr>& body,
                           const std::set<std::string>& params, TokenSets guard_base) {
        local_deps_.clear();
        current_params_ = params;
        walk(name, body, guard_base);
    }

    void walk(const std::string& construct, const std::vector<StmtPtr>& stmts,
              TokenSets guards) {
        for (const auto& s : stmts) {
            StatementFacts sf;
            sf.id = StatementId{construct, s->ordinal};
            sf.stmt = s.get();
            sf.guard_state_vars = guards.state_vars;
            sf.caller_dependent = guards.caller;

            TokenSets rhs;
            switch (s->kind) {
            case StmtKind::LocalDecl: {
                collect_expr(*s->value, rhs, &local_deps_);
                local_deps_[s->name] = rhs;
                break;
            }
            case StmtKind::Assign:
            case StmtKind::CompoundAdd:
            case StmtKind::CompoundSub: {
                collect_expr(*s->value, rhs, &local_deps_);
                if (s->index) collect_expr(*s->index, rhs, &local_deps_);
                if (s->kind != StmtKind::Assign && ast_.find_state_var(s->name))
                    rhs.state_vars.insert(s->name); // compound reads the target
                if (ast_.find_state_var(s->name)) {
                    sf.is_assignment = true;
                    sf.target = s->name;
                    note_write(construct, s->name);
                    for (const auto& rv : rhs.state_vars) {
                        facts_.data_dep.insert({s->name, rv});
                        note_read(construct, rv);
                    }
                } else {
                    // local reassignment: merge, path-insensitive
                    local_deps_[s->name].merge(rhs);
                }
                break;
            }
            case StmtKind::Require:
            case StmtKind::Selfdestruct:
                collect_expr(*s->value, rhs, &local_deps_);
                break;
            case StmtKind::If:
                collect_expr(*s->value, rhs, &local_deps_);
                break;
            case StmtKind::Call:
                for (const auto& a : s->args) collect_expr(*a, rhs, &local_deps_);
                break;
            case StmtKind::Revert:
            case StmtKind::Placeholder:
                break;
            }
            sf.rhs_state_vars = rhs.state_vars;
            sf.rhs_consts = rhs.consts;
            sf.rhs_params = rhs.params;
            sf.caller_dependent = sf.caller_dependent || rhs.caller;
            for (const auto& rv : rhs.state_vars) note_read(construct, rv);
            for (const auto& gv : guards.state_vars) {
                facts_.ctrl_dep.insert({sf.id, gv});
                note_read(construct, gv);
            }
            facts_.per_stmt[sf.id] = sf;

            if (s->kind == StmtKind::Require) {
                // subsequent statements are control-dependent on this guard
                guards.merge(rhs);
            } else if (s->kind == StmtKind::If) {
                TokenSets inner = guards;
                inner.merge(rhs);
                walk(construct, s->body, inner);
                walk(construct, s->else_body, inner);
            }
        }
    }

    void note_read(const std::string& construct, const std::string& var) {
        facts_.reads[construct].insert(var);
    }
    void note_write(const std::string& construct, const std::string& var) {
        facts_.writes[construct].insert(var);
    }

    // Fold callee reads/writes into callers and build the expanded
    // assignment-statement list used by label propagation.
    void expand_function(const std::string& fn) {
        const FunctionDecl* f = fn == "constructor"
                                    ? (ast_.constructor ? &*ast_.constructor : nullptr)
                                    : ast_.find_function(fn);
        if (!f) return;
        std::function<void(const std::string&)> fold = [&](const std::string& g) {
            const FunctionDecl* gf = ast_.find_function(g);
            if (!gf) return;
            for (const auto& r : facts_.reads[g]) facts_.reads[fn].insert(r);
            for (const auto& w : facts_.writes[g]) facts_.writes[fn].insert(w);
            std::function<void(const Stmt&)> deeper = [&](const Stmt& s) {
                if (s.kind == StmtKind::Call) fold(s.name);
                for (const auto& c : s.body) deeper(*c);
                for (const auto& c : s.else_body) deeper(*c);
            };
            for (const auto& s : gf->body) deeper(*s);
        };
        std::function<void(const Stmt&)> scan = [&](const Stmt& s) {
            if (s.kind == StmtKind::Call) fold(s.name);
            for (const auto& c : s.body) scan(*c);
            for (const auto& c : s.else_body) scan(*c);
        };
        for (const auto& mn : f->modifiers) {
            for (const auto& r : facts_.reads[mn]) facts_.reads[fn].insert(r);
            for (const auto& w : facts_.writes[mn]) facts_.writes[fn].insert(w);
        }
        for (const auto& s : f->body) scan(*s);
    }

    void collect_expanded(const std::string& top, const std::string& fn,
                          std::vector<std::string>& stack) {
        const FunctionDecl* f = fn == "constructor"
                                    ? (ast_.constructor ? &*ast_.constructor : nullptr)
                                    : ast_.find_function(fn);
        if (!f) return;
        stack.push_back(fn);
        std::function<void(const Stmt&, const std::string&)> visit =
            [&](const Stmt& s, const std::string& construct) {
                if (s.kind == StmtKind::Assign || s.kind == StmtKind::CompoundAdd ||
                    s.kind == StmtKind::CompoundSub) {
                    StatementId id{construct, s.ordinal};
                    const StatementFacts* sf = facts_.stmt_facts(id);
                    if (sf && sf->is_assignment)
                        facts_.expanded_assignments[top].push_back(id);
                } else if (s.kind == StmtKind::Call) {
                    bool cyclic = false;
                    for (const auto& g : stack) cyclic = cyclic || g == s.name;
                    if (!cyclic) collect_expanded(top, s.name, stack);
                }
                for (const auto& c : s.body) visit(*c, construct);
                for (const auto& c : s.else_body) visit(*c, construct);
            };
        for (const auto& s : f->body) visit(*s, fn);
        stack.pop_back();
    }
};

} // namespace

DependenceFacts build_facts(const ContractAST& ast) {
    return FactsBuilder(ast).build();
}

std::set<std::string> related_funcs_search(const ContractAST& ast, const DependenceFacts& facts,
                                           const std::set<std::string>& delta_vars) {
    std::set<std::string> out;
    for (const auto& v : delta_vars) {
        if (v == "exec_state" || v == "ether") continue;
        if (!ast.find_state_var(v)) throw UnknownVariableError(v);
        for (const auto& f : ast.functions) {
            auto it = facts.reads.find(f.name);
            if (it != facts.reads.end() && it->second.count(v)) out.insert(f.name);
        }
    }
    return out;
}

} // namespace janus
