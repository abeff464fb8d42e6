#include "janus/engine.hpp"
#include "janus/solver.hpp"

#include <algorithm>
#include <functional>
#include <ostream>
#include <sstream>

namespace janus {

namespace {

// ---- privileged-account identification ----------------------------------

// Conjunct atoms of the form msg.sender == <state var> (either side).
void pinned_vars(const Expr& cond, std::set<std::string>& out) {
    if (cond.kind == ExprKind::Binary && cond.bin == BinOp::And) {
        pinned_vars(*cond.lhs, out);
        pinned_vars(*cond.rhs, out);
        return;
    }
    if (cond.kind == ExprKind::Binary && cond.bin == BinOp::Eq) {
        const Expr& l = *cond.lhs;
        const Expr& r = *cond.rhs;
        if (l.kind == ExprKind::MsgSender && r.kind == ExprKind::Ident) out.insert(r.name);
        if (r.kind == ExprKind::MsgSender && l.kind == ExprKind::Ident) out.insert(l.name);
    }
}

bool stmt_writes_var(const ContractAST& ast, const DependenceFacts& facts, const Stmt& s,
                     const std::string& var) {
    if ((s.kind == StmtKind::Assign || s.kind == StmtKind::CompoundAdd ||
         s.kind == StmtKind::CompoundSub) &&
        s.name == var)
        return true;
    if (s.kind == StmtKind::Call) {
        auto it = facts.writes.find(s.name);
        if (it != facts.writes.end() && it->second.count(var)) return true;
    }
    if (s.kind == StmtKind::Selfdestruct) return false;
    (void)ast;
    return false;
}

bool walk_pinned(const ContractAST& ast, const DependenceFacts& facts,
                 const std::vector<StmtPtr>& stmts, const std::string& var,
                 const std::set<std::string>& priv, std::set<std::string> guards) {
    for (const auto& s : stmts) {
        if (stmt_writes_var(ast, facts, *s, var)) {
            bool pinned = false;
            for (const auto& g : guards) pinned = pinned || priv.count(g) > 0;
            if (!pinned) return false;
        }
        if (s->kind == StmtKind::Require) {
            pinned_vars(*s->value, guards);
        } else if (s->kind == StmtKind::If) {
            std::set<std::string> then_guards = guards;
            pinned_vars(*s->value, then_guards);
            if (!walk_pinned(ast, facts, s->body, var, priv, then_guards)) return false;
            if (!walk_pinned(ast, facts, s->else_body, var, priv, guards)) return false;
        }
    }
    return true;
}

bool writes_only_under_privilege(const ContractAST& ast, const DependenceFacts& facts,
                                 const FunctionDecl& f, const std::string& var,
                                 const std::set<std::string>& priv) {
    std::set<std::string> guards;
    for (const auto& mn : f.modifiers) {
        const ModifierDecl* m = ast.find_modifier(mn);
        if (!m) continue;
        for (const auto& s : m->body)
            if (s->kind == StmtKind::Require) pinned_vars(*s->value, guards);
    }
    return walk_pinned(ast, facts, f.body, var, priv, guards);
}

// ---- execution paths ------------------------------------------------------

struct ForkSignal {
    SymValue cond;
    bool unknown = false; // solver could not decide either side
};

struct Frame {
    const std::vector<StmtPtr>* stmts = nullptr;
    std::size_t idx = 0;
    std::string construct;
    std::size_t locals_depth = 0;
};

struct PathItem {
    std::map<std::string, SymValue> scalars;
    std::map<std::string, MappingStore> mappings;
    std::vector<std::map<std::string, SymValue>> locals_stack;
    std::vector<Frame> frames;
    std::vector<SymValue> pc;
    std::vector<StatementId> pi; // this transition only
    std::vector<std::string> pi_proj;
    std::set<std::string> theta;
    std::set<std::string> theta_added;
    bool guard_taint = false;
    bool exec_taint = false;
    bool approximate = false;
    std::map<std::string, std::map<std::string, MappingAccess>> accesses;
    std::map<std::string, ScalarWrite> swrites;
    std::map<std::string, int> default_counts;
    ExecState finished = ExecState::Success;
    bool done = false;
};

std::string canonical_token(const Expr& key) {
    switch (key.kind) {
    case ExprKind::MsgSender: return "msg.sender";
    case ExprKind::Ident: return key.name;
    case ExprKind::AddressLit: return "address(" + std::to_string(key.number) + ")";
    default: {
        // compound key expressions: render the shape
        std::vector<std::string> ids;
        collect_idents(key, ids);
        std::string t = "expr";
        for (const auto& id : ids) t += ":" + id;
        if (mentions_msg_sender(key)) t += ":msg.sender";
        return t;
    }
    }
}

class Execution {
public:
    Execution(const ContractAST& ast, const DependenceFacts& facts, const FunctionDecl& f,
              const CallerContext& ctx, const LabeledState& pre,
              const std::map<std::string, SymValue>& params, const EngineOptions& opts)
        : ast_(ast), facts_(facts), fn_(f), ctx_(ctx), pre_(pre), params_(params), opts_(opts),
          exec_seq_(pre.exec_seq + 1) {}

    std::vector<LabeledState> run() {
        std::vector<PathItem> work;
        work.push_back(initial_item());
        std::vector<LabeledState> out;
        int expansions = 0;
        bool truncated = false;
        while (!work.empty()) {
            PathItem item = std::move(work.back());
            work.pop_back();
            if (item.done) {
                out.push_back(finish(item));
                continue;
            }
            if (++expansions > opts_.max_paths * 16 ||
                static_cast<int>(out.size()) >= opts_.max_paths) {
                truncated = true;
                break;
            }
            step(item, work);
        }
        if (truncated)
            for (auto& s : out) s.approximate = true;
        // deterministic order: by canonical path condition
        std::stable_sort(out.begin(), out.end(), [](const LabeledState& a, const LabeledState& b) {
            return path_key(a) < path_key(b);
        });
        return out;
    }

private:
    const ContractAST& ast_;
    const DependenceFacts& facts_;
    const FunctionDecl& fn_;
    const CallerContext& ctx_;
    const LabeledState& pre_;
    const std::map<std::string, SymValue>& params_;
    const EngineOptions& opts_;
    int exec_seq_;

    static std::string path_key(const LabeledState& s) {
        std::string k = exec_state_name(s.exec_state);
        for (std::size_t i = s.pi_offset; i < s.pi.size(); ++i) k += "|" + to_string(s.pi[i]);
        for (const auto& c : s.path_cond) k += "&" + render(c);
        return k;
    }

    PathItem initial_item() {
        PathItem item;
        item.scalars = pre_.scalars;
        item.mappings = pre_.mappings;
        item.pc = pre_.path_cond;
        for (const auto& a : ctx_.assumptions) item.pc.push_back(a);
        item.theta = pre_.theta;
        item.theta.erase("exec_state"); // per-execution label, reset each run
        item.locals_stack.push_back(params_);
        item.frames.push_back(Frame{&fn_.body, 0, fn_.name, 0});
        // modifiers run before the body, in declaration order
        for (auto it = fn_.modifiers.rbegin(); it != fn_.modifiers.rend(); ++it) {
            const ModifierDecl* m = ast_.find_modifier(*it);
            if (!m) continue;
            item.locals_stack.push_back({});
            item.frames.push_back(Frame{&m->body, 0, m->name, item.locals_stack.size() - 1});
        }
        return item;
    }

    void step(PathItem item, std::vector<PathItem>& work) {
        // drop exhausted frames
        while (!item.frames.empty() && item.frames.back().idx >= item.frames.back().stmts->size())
            item.frames.pop_back();
        if (item.frames.empty()) {
            item.done = true;
            item.finished = ExecState::Success;
            work.push_back(std::move(item));
            return;
        }
        PathItem snapshot = item;
        Frame& frame = item.frames.back();
        const Stmt& stmt = *(*frame.stmts)[frame.idx];
        StatementId id{frame.construct, stmt.ordinal};
        try {
            exec_stmt(item, frame, stmt, id, work);
        } catch (const ForkSignal& fork) {
            // re-run the same statement under each alias assumption
            for (bool branch : {true, false}) {
                PathItem side = snapshot;
                side.pc.push_back(branch ? fork.cond : sym_not(fork.cond));
                side.approximate = side.approximate || fork.unknown;
                SatResult sat = Solver::check(side.pc);
                if (sat == SatResult::Unsat) continue;
                if (sat == SatResult::Unknown) side.approximate = true;
                work.push_back(std::move(side));
            }
        }
    }

    void note_pi(PathItem& item, const StatementId& id) {
        item.pi.push_back(id);
        const StatementFacts* sf = facts_.stmt_facts(id);
        if (opts_.trace && opts_.trace_out) (*opts_.trace_out) << "  " << to_string(id) << "\n";
        if (sf && !sf->caller_dependent) item.pi_proj.push_back(to_string(id));
    }

    bool reads_labeled(const PathItem& item, const StatementFacts* sf) const {
        if (!sf) return false;
        for (const auto& v : sf->rhs_state_vars)
            if (item.theta.count(v)) return true;
        return false;
    }

    void exec_stmt(PathItem& item, Frame& frame, const Stmt& stmt, const StatementId& id,
                   std::vector<PathItem>& work) {
        const StatementFacts* sf = facts_.stmt_facts(id);
        switch (stmt.kind) {
        case StmtKind::Placeholder:
            frame.idx++;
            work.push_back(std::move(item));
            return;
        case StmtKind::LocalDecl: {
            SymValue v = eval(item, *stmt.value, frame);
            note_pi(item, id);
            item.locals_stack[frame.locals_depth][stmt.name] = v;
            frame.idx++;
            work.push_back(std::move(item));
            return;
        }
        case StmtKind::Assign:
        case StmtKind::CompoundAdd:
        case StmtKind::CompoundSub: {
            exec_assign(item, frame, stmt, id, sf);
            frame.idx++;
            work.push_back(std::move(item));
            return;
        }
        case StmtKind::Require: {
            SymValue cond = eval(item, *stmt.value, frame);
            note_pi(item, id);
            note_guard_taint(item, sf);
            frame.idx++;
            branch(std::move(item), std::move(cond), work, /*if_stmt=*/nullptr);
            return;
        }
        case StmtKind::If: {
            SymValue cond = eval(item, *stmt.value, frame);
            note_pi(item, id);
            note_guard_taint(item, sf);
            frame.idx++;
            branch(std::move(item), std::move(cond), work, &stmt);
            return;
        }
        case StmtKind::Revert:
            note_pi(item, id);
            item.done = true;
            item.finished = ExecState::Revert;
            work.push_back(std::move(item));
            return;
        case StmtKind::Selfdestruct:
            eval(item, *stmt.value, frame);
            note_pi(item, id);
            item.done = true;
            item.finished = ExecState::Selfdestruct;
            work.push_back(std::move(item));
            return;
        case StmtKind::Call: {
            const FunctionDecl* callee = ast_.find_function(stmt.name);
            std::map<std::string, SymValue> callee_locals;
            for (std::size_t i = 0; i < stmt.args.size(); ++i)
                callee_locals[callee->params[i].name] = eval(item, *stmt.args[i], frame);
            note_pi(item, id);
            frame.idx++;
            item.locals_stack.push_back(std::move(callee_locals));
            item.frames.push_back(
                Frame{&callee->body, 0, callee->name, item.locals_stack.size() - 1});
            for (auto it = callee->modifiers.rbegin(); it != callee->modifiers.rend(); ++it) {
                const ModifierDecl* m = ast_.find_modifier(*it);
                if (!m) continue;
                item.locals_stack.push_back({});
                item.frames.push_back(Frame{&m->body, 0, m->name, item.locals_stack.size() - 1});
            }
            work.push_back(std::move(item));
            return;
        }
        }
    }

    void note_guard_taint(PathItem& item, const StatementFacts* sf) {
        if (!opts_.label_propagation) return;
        if (reads_labeled(item, sf)) {
            item.guard_taint = true;
            item.exec_taint = true;
        }
    }

    void branch(PathItem item, SymValue cond, std::vector<PathItem>& work, const Stmt* if_stmt) {
        auto proceed = [&](PathItem&& side, bool taken) {
            if (!if_stmt) { // require
                if (!taken) {
                    side.done = true;
                    side.finished = ExecState::Revert;
                }
                work.push_back(std::move(side));
                return;
            }
            const auto& blk = taken ? if_stmt->body : if_stmt->else_body;
            if (!blk.empty()) {
                const Frame& f = side.frames.back();
                side.frames.push_back(Frame{&blk, 0, f.construct, f.locals_depth});
            }
            work.push_back(std::move(side));
        };

        if (cond->kind == SymKind::BoolConst) {
            proceed(std::move(item), cond->bval);
            return;
        }
        std::vector<SymValue> with_true = item.pc;
        with_true.push_back(cond);
        std::vector<SymValue> with_false = item.pc;
        with_false.push_back(sym_not(cond));
        SatResult sat_true = Solver::check(with_true);
        SatResult sat_false = Solver::check(with_false);
        if (sat_true == SatResult::Unsat && sat_false == SatResult::Unsat) return; // dead path
        if (sat_true == SatResult::Unsat) {
            proceed(std::move(item), false);
            return;
        }
        if (sat_false == SatResult::Unsat) {
            proceed(std::move(item), true);
            return;
        }
        bool unknown = sat_true == SatResult::Unknown || sat_false == SatResult::Unknown;
        PathItem other = item;
        item.pc.push_back(cond);
        item.approximate = item.approximate || unknown;
        proceed(std::move(item), true);
        other.pc.push_back(sym_not(cond));
        other.approximate = other.approximate || unknown;
        proceed(std::move(other), false);
    }

    void exec_assign(PathItem& item, Frame& frame, const Stmt& stmt, const StatementId& id,
                     const StatementFacts* sf) {
        const StateVarDecl* sv = ast_.find_state_var(stmt.name);
        if (!sv) {
            // local update
            SymValue rhs = eval(item, *stmt.value, frame);
            note_pi(item, id);
            auto& locals = item.locals_stack[frame.locals_depth];
            auto it = locals.find(stmt.name);
            SymValue cur = it != locals.end() ? it->second : make_num(0);
            if (stmt.kind == StmtKind::CompoundAdd) rhs = sym_add(cur, rhs);
            if (stmt.kind == StmtKind::CompoundSub) rhs = sym_sub(cur, rhs);
            locals[stmt.name] = rhs;
            return;
        }
        if (!sv->type.is_mapping) {
            SymValue rhs = eval(item, *stmt.value, frame);
            note_pi(item, id);
            SymValue cur = item.scalars[stmt.name];
            if (stmt.kind == StmtKind::CompoundAdd) rhs = sym_add(cur, rhs);
            if (stmt.kind == StmtKind::CompoundSub) rhs = sym_sub(cur, rhs);
            item.scalars[stmt.name] = rhs;
            ScalarWrite& w = item.swrites[stmt.name];
            w.assigned = true;
            w.const_address =
                stmt.kind == StmtKind::Assign && stmt.value->kind == ExprKind::AddressLit;
            merge_related(w.related_state_vars, w.related_consts, w.related_params, sf);
            update_label(item, stmt.name, sf, /*mapping=*/false);
            return;
        }
        // mapping write
        SymValue key = eval(item, *stmt.index, frame);
        std::string token = canonical_token(*stmt.index);
        std::size_t cell = resolve_cell(item, stmt.name, key, token, sv->type.scalar);
        SymValue cur = item.mappings[stmt.name].cells[cell].value;
        SymValue rhs = eval(item, *stmt.value, frame);
        note_pi(item, id);
        if (stmt.kind == StmtKind::CompoundAdd) rhs = sym_add(cur, rhs);
        if (stmt.kind == StmtKind::CompoundSub) rhs = sym_sub(cur, rhs);
        item.mappings[stmt.name].cells[cell].value = rhs;
        MappingAccess& acc = touch(item, stmt.name, token, cur);
        acc.post = rhs;
        acc.written = true;
        merge_related(acc.related_state_vars, acc.related_consts, acc.related_params, sf);
        update_label(item, stmt.name, sf, /*mapping=*/true);
    }

    void merge_related(std::set<std::string>& sv, std::set<std::string>& cv,
                       std::set<std::string>& pv, const StatementFacts* sf) {
        if (!sf) return;
        sv.insert(sf->rhs_state_vars.begin(), sf->rhs_state_vars.end());
        cv.insert(sf->rhs_consts.begin(), sf->rhs_consts.end());
        for (const auto& p : sf->rhs_params)
            if (p != "msg.sender") pv.insert(p);
    }

    void update_label(PathItem& item, const std::string& var, const StatementFacts* sf,
                      bool mapping) {
        if (!opts_.label_propagation) return;
        bool tainted = item.guard_taint || reads_labeled(item, sf);
        if (tainted) {
            if (item.theta.insert(var).second) item.theta_added.insert(var);
        } else if (!mapping) {
            // independent reassignment clears the label; a single-cell write
            // cannot clear a whole-mapping label
            item.theta.erase(var);
        }
    }

    MappingAccess& touch(PathItem& item, const std::string& var, const std::string& token,
                         const SymValue& pre) {
        auto& per_var = item.accesses[var];
        auto it = per_var.find(token);
        if (it == per_var.end()) {
            MappingAccess acc;
            acc.pre = pre;
            acc.post = pre;
            it = per_var.emplace(token, std::move(acc)).first;
        }
        return it->second;
    }

    std::size_t resolve_cell(PathItem& item, const std::string& var, const SymValue& key,
                             const std::string& token, ScalarType value_type) {
        MappingStore& store = item.mappings[var];
        for (std::size_t i = 0; i < store.cells.size(); ++i) {
            const MappingCell& cell = store.cells[i];
            if (sym_equal(cell.key, key)) return i;
            SymValue eq = sym_eq_addr(cell.key, key);
            if (eq->kind == SymKind::BoolConst) {
                if (eq->bval) return i;
                continue;
            }
            std::vector<SymValue> with_eq = item.pc;
            with_eq.push_back(eq);
            std::vector<SymValue> with_ne = item.pc;
            with_ne.push_back(sym_not(eq));
            SatResult can_eq = Solver::check(with_eq);
            SatResult can_ne = Solver::check(with_ne);
            if (can_eq == SatResult::Unsat) continue;
            if (can_ne == SatResult::Unsat) return i;
            ForkSignal fork;
            fork.cond = eq;
            fork.unknown = can_eq == SatResult::Unknown || can_ne == SatResult::Unknown;
            throw fork;
        }
        // materialize a default cell with a canonical, role-independent name
        std::string base = "m!" + var + "!" + token + "!e" + std::to_string(exec_seq_);
        int n = item.default_counts[base]++;
        if (n > 0) base += "!" + std::to_string(n);
        SymValue fresh;
        switch (value_type) {
        case ScalarType::Numeric: fresh = make_symbol(base, SymType::Num, true); break;
        case ScalarType::Boolean: fresh = make_symbol(base, SymType::Bool); break;
        case ScalarType::Address: fresh = make_symbol(base, SymType::Addr); break;
        }
        store.cells.push_back(MappingCell{key, token, fresh});
        return store.cells.size() - 1;
    }

    SymValue eval(PathItem& item, const Expr& e, const Frame& frame) {
        switch (e.kind) {
        case ExprKind::NumberLit: return make_num(e.number);
        case ExprKind::BoolLit: return make_bool(e.boolean);
        case ExprKind::AddressLit: return make_addr_const(e.number);
        case ExprKind::MsgSender: return ctx_.sender;
        case ExprKind::MsgValue:
            return make_symbol("msg.value!e" + std::to_string(exec_seq_), SymType::Num, true);
        case ExprKind::BlockNumber: return make_symbol("block.number", SymType::Num, true);
        case ExprKind::Ident: {
            const auto& locals = item.locals_stack[frame.locals_depth];
            auto it = locals.find(e.name);
            if (it != locals.end()) return it->second;
            auto sit = item.scalars.find(e.name);
            if (sit != item.scalars.end()) return sit->second;
            return make_num(0); // unreachable on validated ASTs
        }
        case ExprKind::Index: {
            const StateVarDecl* sv = ast_.find_state_var(e.name);
            SymValue key = eval(item, *e.rhs, frame);
            std::string token = canonical_token(*e.rhs);
            std::size_t cell =
                resolve_cell(item, e.name, key, token, sv ? sv->type.scalar : ScalarType::Numeric);
            SymValue v = item.mappings[e.name].cells[cell].value;
            touch(item, e.name, token, v);
            return v;
        }
        case ExprKind::Unary: {
            SymValue a = eval(item, *e.lhs, frame);
            return e.un == UnOp::Not ? sym_not(a) : sym_neg(a);
        }
        case ExprKind::Binary: {
            SymValue a = eval(item, *e.lhs, frame);
            SymValue b = eval(item, *e.rhs, frame);
            switch (e.bin) {
            case BinOp::Add: return sym_add(a, b);
            case BinOp::Sub: return sym_sub(a, b);
            case BinOp::Mul: return sym_mul(a, b);
            case BinOp::Eq: return sym_cmp(CmpRel::Eq, a, b);
            case BinOp::Ne: return sym_cmp(CmpRel::Ne, a, b);
            case BinOp::Lt: return sym_cmp(CmpRel::Lt, a, b);
            case BinOp::Le: return sym_cmp(CmpRel::Le, a, b);
            case BinOp::Gt: return sym_cmp(CmpRel::Gt, a, b);
            case BinOp::Ge: return sym_cmp(CmpRel::Ge, a, b);
            case BinOp::And: return sym_and(a, b);
            case BinOp::Or: return sym_or(a, b);
            }
            return make_bool(false);
        }
        }
        return make_num(0);
    }

    LabeledState finish(PathItem& item) {
        LabeledState next;
        next.exec_state = item.finished;
        next.exec_seq = exec_seq_;
        next.pi = pre_.pi;
        next.pi_offset = next.pi.size();
        next.pi.insert(next.pi.end(), item.pi.begin(), item.pi.end());
        next.pi_projected = item.pi_proj;
        next.path_cond = item.pc;
        next.approximate = pre_.approximate || item.approximate;
        next.scalars_pre = pre_.scalars;
        next.map_accesses = item.accesses;
        next.scalar_writes = item.swrites;
        next.destroyed = pre_.destroyed || item.finished == ExecState::Selfdestruct;
        if (ctx_.sender->kind == SymKind::Symbol) next.sender_symbol = ctx_.sender->name;

        if (item.finished == ExecState::Revert) {
            next.scalars = pre_.scalars;
            next.mappings = pre_.mappings;
            // rolled back: change records become neutral, related data remains
            for (auto& [var, per_token] : next.map_accesses)
                for (auto& [token, acc] : per_token) {
                    acc.post = acc.pre;
                    acc.written = false;
                }
            next.theta = pre_.theta;
            next.theta.erase("exec_state");
            if (opts_.label_propagation)
                next.theta.insert(item.theta_added.begin(), item.theta_added.end());
        } else {
            next.scalars = item.scalars;
            next.mappings = item.mappings;
            next.theta = item.theta;
        }

        if (item.finished == ExecState::Selfdestruct && opts_.label_propagation) {
            for (const auto& v : ast_.state_vars) next.theta.insert(v.name);
            next.theta.insert("ether");
            next.theta.insert("exec_state");
        }

        if (opts_.label_propagation) {
            if (item.exec_taint) next.theta.insert("exec_state");
            apply_static_labels(item, next);
        }
        return next;
    }

    // Assignments of the function that did not execute on this path still
    // propagate labels: they carry the differences the omitted branches of
    // history would have produced.
    void apply_static_labels(const PathItem& item, LabeledState& next) {
        std::set<StatementId> executed(item.pi.begin(), item.pi.end());
        auto it = facts_.expanded_assignments.find(fn_.name);
        if (it == facts_.expanded_assignments.end()) return;
        for (const auto& id : it->second) {
            if (executed.count(id)) continue;
            const StatementFacts* sf = facts_.stmt_facts(id);
            if (!sf || !sf->is_assignment) continue;
            bool dep = false;
            for (const auto& v : sf->rhs_state_vars) dep = dep || pre_.theta.count(v) > 0;
            for (const auto& v : sf->guard_state_vars) dep = dep || pre_.theta.count(v) > 0;
            if (dep) next.theta.insert(sf->target);
        }
    }
};

} // namespace

std::set<std::string> identify_privileged(const ContractAST& ast, const DependenceFacts& facts) {
    std::set<std::string> priv;
    // base: address vars never written by any function
    for (const auto& v : ast.state_vars) {
        if (v.type.is_mapping || v.type.scalar != ScalarType::Address) continue;
        bool written = false;
        for (const auto& f : ast.functions) {
            auto it = facts.writes.find(f.name);
            written = written || (it != facts.writes.end() && it->second.count(v.name));
        }
        if (!written) priv.insert(v.name);
    }
    // fixpoint: vars assignable only under already-privileged guards
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& v : ast.state_vars) {
            if (v.type.is_mapping || v.type.scalar != ScalarType::Address) continue;
            if (priv.count(v.name)) continue;
            bool ok = true;
            for (const auto& f : ast.functions) {
                auto it = facts.writes.find(f.name);
                if (it == facts.writes.end() || !it->second.count(v.name)) continue;
                ok = ok && writes_only_under_privilege(ast, facts, f, v.name, priv);
            }
            if (ok) {
                priv.insert(v.name);
                changed = true;
            }
        }
    }
    return priv;
}

LabeledState exec_constructor(const ContractAST& ast, const DependenceFacts& facts) {
    LabeledState init;
    init.exec_seq = -1;
    for (const auto& v : ast.state_vars) {
        if (v.type.is_mapping) {
            init.mappings[v.name] = MappingStore{};
            continue;
        }
        SymValue val;
        if (v.initializer) {
            switch (v.initializer->kind) {
            case ExprKind::NumberLit: val = make_num(v.initializer->number); break;
            case ExprKind::BoolLit: val = make_bool(v.initializer->boolean); break;
            case ExprKind::AddressLit: val = make_addr_const(v.initializer->number); break;
            default: break;
            }
        }
        if (!val) {
            switch (v.type.scalar) {
            case ScalarType::Numeric: val = make_num(0); break;
            case ScalarType::Boolean: val = make_bool(false); break;
            case ScalarType::Address: val = make_addr_const(0); break;
            }
        }
        init.scalars[v.name] = val;
    }
    init.mappings["ether"] = MappingStore{};
    if (!ast.constructor) {
        init.exec_seq = 0;
        return init;
    }
    CallerContext deployer;
    deployer.role = CallerRole::Privileged;
    deployer.sender = make_symbol("acct!deployer", SymType::Addr);
    std::map<std::string, SymValue> params = fresh_params(*ast.constructor, 0);
    auto successors = labeled_symbolic_exec(ast, facts, *ast.constructor, deployer, init, params);
    for (auto& s : successors) {
        if (s.exec_state != ExecState::Success) continue;
        if (successors.size() > 1) s.approximate = true;
        // reset per-transition records: l0 is the baseline
        s.map_accesses.clear();
        s.scalar_writes.clear();
        s.scalars_pre = s.scalars;
        s.theta.clear();
        return s;
    }
    throw ConstructorRevert();
}

CallerContext make_privileged_context(const ContractAST& ast, const LabeledState& l,
                                      const std::set<std::string>& privileged) {
    CallerContext ctx;
    ctx.role = CallerRole::Privileged;
    for (const auto& v : ast.state_vars) {
        if (privileged.count(v.name)) {
            ctx.sender = l.scalars.at(v.name);
            return ctx;
        }
    }
    ctx.sender = make_symbol("acct!deployer", SymType::Addr);
    return ctx;
}

CallerContext make_ordinary_context(const ContractAST& ast, const LabeledState& l,
                                    const std::set<std::string>& privileged) {
    CallerContext ctx;
    ctx.role = CallerRole::Ordinary;
    ctx.sender = make_symbol("acct!ordinary", SymType::Addr);
    for (const auto& v : ast.state_vars) {
        if (!privileged.count(v.name)) continue;
        ctx.assumptions.push_back(sym_not(sym_eq_addr(ctx.sender, l.scalars.at(v.name))));
    }
    // distinct from every literal address in the source
    std::set<std::int64_t> lits;
    std::function<void(const Expr&)> scan_expr = [&](const Expr& e) {
        if (e.kind == ExprKind::AddressLit) lits.insert(e.number);
        if (e.lhs) scan_expr(*e.lhs);
        if (e.rhs) scan_expr(*e.rhs);
    };
    std::function<void(const Stmt&)> scan_stmt = [&](const Stmt& s) {
        if (s.value) scan_expr(*s.value);
        if (s.index) scan_expr(*s.index);
        for (const auto& a : s.args) scan_expr(*a);
        for (const auto& c : s.body) scan_stmt(*c);
        for (const auto& c : s.else_body) scan_stmt(*c);
    };
    for (const auto& f : ast.functions)
        for (const auto& s : f.body) scan_stmt(*s);
    if (ast.constructor)
        for (const auto& s : ast.constructor->body) scan_stmt(*s);
    for (const auto& v : ast.state_vars)
        if (v.initializer && v.initializer->kind == ExprKind::AddressLit)
            lits.insert(v.initializer->number);
    for (auto lit : lits)
        ctx.assumptions.push_back(sym_not(sym_eq_addr(ctx.sender, make_addr_const(lit))));
    return ctx;
}

std::map<std::string, SymValue> fresh_params(const FunctionDecl& f, int exec_seq) {
    std::map<std::string, SymValue> params;
    for (const auto& p : f.params) {
        std::string name = "p!" + f.name + "!" + p.name + "!e" + std::to_string(exec_seq);
        switch (p.type.scalar) {
        case ScalarType::Numeric: params[p.name] = make_symbol(name, SymType::Num, true); break;
        case ScalarType::Boolean: params[p.name] = make_symbol(name, SymType::Bool); break;
        case ScalarType::Address: params[p.name] = make_symbol(name, SymType::Addr); break;
        }
    }
    return params;
}

std::vector<LabeledState> labeled_symbolic_exec(const ContractAST& ast,
                                                const DependenceFacts& facts,
                                                const FunctionDecl& f, const CallerContext& ctx,
                                                const LabeledState& l,
                                                const std::map<std::string, SymValue>& params,
                                                const EngineOptions& opts) {
    if (opts.trace && opts.trace_out)
        (*opts.trace_out) << "exec " << f.name << " ("
                          << (ctx.role == CallerRole::Privileged ? "privileged" : "ordinary")
                          << ")\n";
    if (l.destroyed) {
        // a destroyed contract accepts no further calls
        LabeledState dead = l;
        dead.exec_seq = l.exec_seq + 1;
        dead.exec_state = ExecState::Revert;
        dead.pi_offset = dead.pi.size();
        dead.pi_projected.clear();
        dead.map_accesses.clear();
        dead.scalar_writes.clear();
        dead.scalars_pre = l.scalars;
        return {dead};
    }
    Execution exec(ast, facts, f, ctx, l, params, opts);
    return exec.run();
}

std::map<std::string, std::string> canonical_change_record(const ContractAST& ast,
                                                           const LabeledState& s) {
    std::map<std::string, std::string> out;
    for (const auto& v : ast.state_vars) {
        if (!v.type.is_mapping) {
            out[v.name] = render_canonical(s.scalars.at(v.name), s.sender_symbol);
            continue;
        }
        std::string rec;
        auto it = s.map_accesses.find(v.name);
        if (it != s.map_accesses.end()) {
            for (const auto& [token, acc] : it->second) {
                rec += token + ":";
                if (v.type.scalar == ScalarType::Numeric) {
                    rec += render_canonical(sym_sub(acc.post, acc.pre), s.sender_symbol);
                } else {
                    rec += render_canonical(acc.pre, s.sender_symbol) + "->" +
                           render_canonical(acc.post, s.sender_symbol);
                }
                rec += ";";
            }
        }
        out[v.name] = rec;
    }
    out["exec_state"] = exec_state_name(s.exec_state);
    out["ether"] = "";
    return out;
}

} // namespace janus
