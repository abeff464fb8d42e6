#include "janus/vpg.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace janus {

namespace {

std::string sv_id(const std::string& var) { return "sv:" + var; }
std::string lv_id(const std::string& fn, const std::string& var) { return "lv:" + fn + "." + var; }
std::string st_id(const StatementId& id) {
    return "st:" + id.construct + "#" + std::to_string(id.ordinal);
}

class Builder {
public:
    Builder(const ContractAST& ast, const DependenceFacts& facts) : ast_(ast), facts_(facts) {}

    VariablePropertyGraph build() {
        for (const auto& v : ast_.state_vars)
            add_node(NodeKind::StateVar, sv_id(v.name), v.name);

        for (const auto& f : ast_.functions) declare_locals(f);
        if (ast_.constructor) declare_locals(*ast_.constructor);

        for (const auto& f : ast_.functions) walk_construct(f.name, f.body);
        if (ast_.constructor) walk_construct("constructor", ast_.constructor->body);
        for (const auto& m : ast_.modifiers) walk_construct(m.name, m.body);

        for (const auto& [left, right] : facts_.data_dep)
            add_edge(EdgeKind::DDE, sv_id(right), sv_id(left));

        std::sort(g_.edges.begin(), g_.edges.end());
        g_.edges.erase(std::unique(g_.edges.begin(), g_.edges.end(),
                                   [](const VpgEdge& a, const VpgEdge& b) {
                                       return a.kind == b.kind && a.from == b.from && a.to == b.to;
                                   }),
                       g_.edges.end());
        return std::move(g_);
    }

private:
    const ContractAST& ast_;
    const DependenceFacts& facts_;
    VariablePropertyGraph g_;
    std::string current_fn_; // local-variable scope for the construct walked

    void add_node(NodeKind k, const std::string& id, const std::string& label) {
        g_.nodes.emplace(id, VpgNode{k, id, label});
    }
    void add_edge(EdgeKind k, const std::string& from, const std::string& to) {
        g_.edges.push_back(VpgEdge{k, from, to});
    }

    void declare_locals(const FunctionDecl& f) {
        for (const auto& p : f.params)
            add_node(NodeKind::LocalVar, lv_id(f.name, p.name), f.name + "." + p.name);
        std::function<void(const Stmt&)> scan = [&](const Stmt& s) {
            if (s.kind == StmtKind::LocalDecl)
                add_node(NodeKind::LocalVar, lv_id(f.name, s.name), f.name + "." + s.name);
            for (const auto& c : s.body) scan(*c);
            for (const auto& c : s.else_body) scan(*c);
        };
        for (const auto& s : f.body) scan(*s);
    }

    std::string var_node(const std::string& name) {
        if (ast_.find_state_var(name)) return sv_id(name);
        std::string local = lv_id(current_fn_, name);
        if (g_.nodes.count(local)) return local;
        // identifiers inside modifiers resolve to state vars only; anything
        // else would have failed validation
        return sv_id(name);
    }

    void expr_reads(const Expr& e, std::set<std::string>& out) {
        std::vector<std::string> ids;
        collect_idents(e, ids);
        for (const auto& id : ids) out.insert(var_node(id));
    }

    // Emits statement nodes and intra-construct control flow; returns the
    // statement ids that fall through to the next statement.
    std::vector<std::string> walk_block(const std::string& construct,
                                        const std::vector<StmtPtr>& stmts,
                                        std::vector<std::string> preds) {
        for (const auto& s : stmts) {
            StatementId id{construct, s->ordinal};
            std::string node = st_id(id);
            add_node(NodeKind::FunctionStatement, node, to_string(id));
            for (const auto& p : preds) add_edge(EdgeKind::CFE, p, node);
            preds = {node};

            const StatementFacts* sf = facts_.stmt_facts(id);
            if (sf)
                for (const auto& g : sf->guard_state_vars)
                    add_edge(EdgeKind::CDE, sv_id(g), node);

            std::set<std::string> reads;
            std::set<std::string> writes;
            switch (s->kind) {
            case StmtKind::LocalDecl:
                expr_reads(*s->value, reads);
                writes.insert(var_node(s->name));
                for (const auto& r : reads) add_edge(EdgeKind::DDE, r, var_node(s->name));
                break;
            case StmtKind::Assign:
            case StmtKind::CompoundAdd:
            case StmtKind::CompoundSub:
                expr_reads(*s->value, reads);
                if (s->index) expr_reads(*s->index, reads);
                if (s->kind != StmtKind::Assign) reads.insert(var_node(s->name));
                writes.insert(var_node(s->name));
                if (!ast_.find_state_var(s->name))
                    for (const auto& r : reads) add_edge(EdgeKind::DDE, r, var_node(s->name));
                break;
            case StmtKind::Require:
            case StmtKind::Selfdestruct:
                expr_reads(*s->value, reads);
                break;
            case StmtKind::If: {
                expr_reads(*s->value, reads);
                for (const auto& r : reads) add_edge(EdgeKind::DFE, r, node);
                std::vector<std::string> exits;
                auto then_exits = walk_block(construct, s->body, {node});
                exits.insert(exits.end(), then_exits.begin(), then_exits.end());
                if (!s->else_body.empty()) {
                    auto else_exits = walk_block(construct, s->else_body, {node});
                    exits.insert(exits.end(), else_exits.begin(), else_exits.end());
                } else {
                    exits.push_back(node);
                }
                preds = exits;
                continue;
            }
            case StmtKind::Call: {
                const FunctionDecl* callee = ast_.find_function(s->name);
                for (std::size_t i = 0; i < s->args.size() && callee; ++i) {
                    std::set<std::string> arg_reads;
                    expr_reads(*s->args[i], arg_reads);
                    std::string param = lv_id(callee->name, callee->params[i].name);
                    for (const auto& a : arg_reads) add_edge(EdgeKind::RFE, a, param);
                    for (const auto& a : arg_reads) reads.insert(a);
                }
                if (callee && !callee->body.empty()) {
                    StatementId entry{callee->name, callee->body.front()->ordinal};
                    add_edge(EdgeKind::FCE, node, st_id(entry));
                }
                break;
            }
            case StmtKind::Revert:
            case StmtKind::Placeholder:
                break;
            }
            for (const auto& r : reads) add_edge(EdgeKind::DFE, r, node);
            for (const auto& w : writes) add_edge(EdgeKind::DFE, node, w);
        }
        return preds;
    }

    void walk_construct(const std::string& construct, const std::vector<StmtPtr>& stmts) {
        current_fn_ = construct;
        walk_block(construct, stmts, {});
    }
};

} // namespace

bool VariablePropertyGraph::well_formed(std::string* why) const {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    for (const auto& e : edges) {
        auto from = nodes.find(e.from);
        auto to = nodes.find(e.to);
        if (from == nodes.end() || to == nodes.end())
            return fail("edge endpoint missing: " + e.from + " -> " + e.to);
        NodeKind fk = from->second.kind;
        NodeKind tk = to->second.kind;
        bool from_var = fk != NodeKind::FunctionStatement;
        bool to_var = tk != NodeKind::FunctionStatement;
        switch (e.kind) {
        case EdgeKind::CFE:
            if (from_var || to_var) return fail("CFE must join statement nodes");
            break;
        case EdgeKind::DFE:
            if (from_var == to_var) return fail("DFE must join a statement and a variable");
            break;
        case EdgeKind::RFE:
            if (!from_var || !to_var) return fail("RFE must join variable nodes");
            break;
        case EdgeKind::CDE:
            if (!from_var || to_var) return fail("CDE must run variable -> statement");
            break;
        case EdgeKind::DDE:
            if (!from_var || !to_var) return fail("DDE must join variable nodes");
            break;
        case EdgeKind::FCE:
            if (from_var || to_var) return fail("FCE must join statement nodes");
            break;
        }
    }
    return true;
}

VariablePropertyGraph build_vpg(const ContractAST& ast, const DependenceFacts& facts) {
    return Builder(ast, facts).build();
}

} // namespace janus
