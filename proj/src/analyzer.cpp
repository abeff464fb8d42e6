#include "janus/analyzer.hpp"
#include "janus/solver.hpp"

#include <algorithm>
#include <cassert>
#include <deque>

namespace janus {

namespace {

struct FrontierEntry {
    Difference difference;
    LabeledState state; // the privileged successor the difference was found at
    std::vector<std::string> provenance;
};

struct PathPair {
    const LabeledState* p;
    const LabeledState* o;
};

std::string pair_key(const LabeledState& s) {
    std::string k = exec_state_name(s.exec_state);
    for (const auto& step : s.pi_projected) k += "|" + step;
    return k;
}

LabeledState synthesize_revert(const LabeledState& l, const CallerContext& ctx) {
    LabeledState r = l;
    r.exec_state = ExecState::Revert;
    r.exec_seq = l.exec_seq + 1;
    r.pi_offset = r.pi.size();
    r.pi_projected.clear();
    r.map_accesses.clear();
    r.scalar_writes.clear();
    r.scalars_pre = l.scalars;
    r.theta.erase("exec_state");
    if (ctx.sender->kind == SymKind::Symbol) r.sender_symbol = ctx.sender->name;
    return r;
}

class Analyzer {
public:
    Analyzer(const ContractAST& ast, const DependenceFacts& facts, const AnalyzeOptions& opts)
        : ast_(ast), facts_(facts), opts_(opts),
          start_(std::chrono::steady_clock::now()) {
        engine_opts_.max_paths = opts.max_paths;
        engine_opts_.label_propagation = !opts.disable_label_propagation;
        engine_opts_.trace = opts.trace;
        engine_opts_.trace_out = opts.trace_out;
    }

    DifferenceSet run() {
        DifferenceSet result;
        result.lattice_bound = summary_lattice_bound(ast_);
        result.privileged = identify_privileged(ast_, facts_);
        if (result.privileged.empty()) return result; // trivially empty

        LabeledState l0 = exec_constructor(ast_, facts_);

        // difference set initialization over every function
        std::vector<FrontierEntry> frontier;
        result.rounds = 1;
        int round_execs = 0;
        int round_new = 0;
        for (const auto& f : ast_.functions) {
            if (out_of_budget()) {
                result.budget_exceeded = true;
                break;
            }
            examine_function(result, f, l0, {f.name}, 1, frontier, nullptr, round_execs,
                             round_new);
        }
        result.convergence_log.push_back(RoundLog{1, round_new, round_execs});

        // difference propagation
        while (!frontier.empty() && !result.budget_exceeded) {
            if (result.rounds >= opts_.max_rounds) {
                result.budget_exceeded = true;
                break;
            }
            result.rounds++;
            round_execs = 0;
            round_new = 0;
            std::vector<FrontierEntry> next_frontier;
            for (const auto& entry : frontier) {
                if (out_of_budget()) {
                    result.budget_exceeded = true;
                    break;
                }
                std::set<std::string> delta_state_vars;
                for (const auto& v : entry.difference.variables())
                    if (ast_.find_state_var(v)) delta_state_vars.insert(v);
                std::set<std::string> related =
                    related_funcs_search(ast_, facts_, delta_state_vars);
                std::set<std::string> tmp_keys; // per-delta dedup within the round
                for (const auto& f : ast_.functions) {
                    if (!related.count(f.name)) continue;
                    if (out_of_budget()) {
                        result.budget_exceeded = true;
                        break;
                    }
                    auto prov = entry.provenance;
                    prov.push_back(f.name);
                    examine_function(result, f, entry.state, prov, result.rounds, next_frontier,
                                     &tmp_keys, round_execs, round_new);
                }
            }
            result.convergence_log.push_back(RoundLog{result.rounds, round_new, round_execs});
            frontier = std::move(next_frontier);
            if (round_new == 0) break;
        }
        assert(static_cast<std::uint64_t>(result.differences.size()) <= result.lattice_bound);
        return result;
    }

private:
    const ContractAST& ast_;
    const DependenceFacts& facts_;
    const AnalyzeOptions& opts_;
    EngineOptions engine_opts_;
    std::chrono::steady_clock::time_point start_;
    std::set<std::string> d_keys_; // canonical keys of D

    bool out_of_budget() const {
        auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_);
        return elapsed.count() > opts_.budget_secs;
    }

    // Executes f from l under both roles, pairs the successors, computes the
    // per-pair delta, and admits new differences into D / the next frontier.
    void examine_function(DifferenceSet& result, const FunctionDecl& f, const LabeledState& l,
                          const std::vector<std::string>& provenance, int round,
                          std::vector<FrontierEntry>& frontier, std::set<std::string>* tmp_keys,
                          int& round_execs, int& round_new) {
        auto params = fresh_params(f, l.exec_seq + 1);
        CallerContext ctx_p = make_privileged_context(ast_, l, result.privileged);
        CallerContext ctx_o = make_ordinary_context(ast_, l, result.privileged);
        std::vector<LabeledState> succ_p =
            labeled_symbolic_exec(ast_, facts_, f, ctx_p, l, params, engine_opts_);
        std::vector<LabeledState> succ_o =
            labeled_symbolic_exec(ast_, facts_, f, ctx_o, l, params, engine_opts_);
        result.executions += 2;
        round_execs += 2;

        for (const auto& [lp, lo] : make_pairs(succ_p, succ_o, l, ctx_p, ctx_o)) {
            StateSummary phi_p = summarize_state(ast_, facts_, l, *lp);
            StateSummary phi_o = summarize_state(ast_, facts_, l, *lo);
            std::set<std::string> theta_for_delta =
                opts_.drop_theta_from_delta ? std::set<std::string>{} : lp->theta;
            std::optional<Difference> delta = diff(phi_p, phi_o, theta_for_delta);

            ExaminedPair ex;
            ex.function = f.name;
            ex.round = round;
            auto rec_p = canonical_change_record(ast_, *lp);
            auto rec_o = canonical_change_record(ast_, *lo);
            for (const auto& [var, rp] : rec_p)
                if (rp != rec_o.at(var)) ex.branch_vars.insert(var);
            for (const auto& v : lp->theta) ex.branch_vars.insert(v);
            ex.differential = !ex.branch_vars.empty();
            if (delta) ex.delta_vars = delta->variables();
            result.examined.push_back(ex);

            if (!delta) continue;
            std::string key = delta->canonical_key();
            if (tmp_keys) {
                if (tmp_keys->count(key)) continue;
                tmp_keys->insert(key);
            }
            if (d_keys_.count(key)) continue;
            d_keys_.insert(key);
            round_new++;

            DiffRecord rec;
            rec.difference = *delta;
            rec.provenance = provenance;
            rec.round = round;
            rec.approximate = lp->approximate || lo->approximate;
            result.differences.push_back(rec);

            FrontierEntry fe;
            fe.difference = *delta;
            fe.state = *lp;
            if (!opts_.disable_label_propagation) {
                for (const auto& v : delta->variables()) {
                    if (v == "exec_state") continue; // per-execution, never persisted
                    if (ast_.find_state_var(v) || v == "ether") fe.state.theta.insert(v);
                }
            }
            fe.provenance = provenance;
            frontier.push_back(std::move(fe));
        }
    }

    std::vector<std::pair<const LabeledState*, const LabeledState*>> make_pairs(
        std::vector<LabeledState>& succ_p, std::vector<LabeledState>& succ_o,
        const LabeledState& l, const CallerContext& ctx_p, const CallerContext& ctx_o) {
        // Successors pair like-with-like: identical caller-independent
        // statement projections and identical exec outcome. A privileged
        // path with no ordinary counterpart pairs against the ordinary
        // revert state (and symmetrically), reconstructing the single-pair
        // view of the iterative algorithm per path.
        std::map<std::string, std::pair<std::vector<const LabeledState*>,
                                        std::vector<const LabeledState*>>>
            groups;
        for (const auto& s : succ_p) groups[pair_key(s)].first.push_back(&s);
        for (const auto& s : succ_o) groups[pair_key(s)].second.push_back(&s);

        const LabeledState* o_revert = nullptr;
        for (const auto& s : succ_o)
            if (s.exec_state == ExecState::Revert && !o_revert) o_revert = &s;
        const LabeledState* p_revert = nullptr;
        for (const auto& s : succ_p)
            if (s.exec_state == ExecState::Revert && !p_revert) p_revert = &s;

        std::vector<std::pair<const LabeledState*, const LabeledState*>> pairs;
        std::vector<const LabeledState*> lone_p, lone_o;
        for (const auto& [key, group] : groups) {
            const auto& [ps, os] = group;
            if (!ps.empty() && !os.empty()) {
                for (const auto* p : ps)
                    for (const auto* o : os) pairs.push_back({p, o});
            } else {
                for (const auto* p : ps) lone_p.push_back(p);
                for (const auto* o : os) lone_o.push_back(o);
            }
        }
        if (!lone_p.empty()) {
            if (!o_revert) {
                synth_o_.push_back(synthesize_revert(l, ctx_o));
                o_revert = &synth_o_.back();
            }
            for (const auto* p : lone_p) pairs.push_back({p, o_revert});
        }
        if (!lone_o.empty()) {
            if (!p_revert) {
                synth_p_.push_back(synthesize_revert(l, ctx_p));
                p_revert = &synth_p_.back();
            }
            for (const auto* o : lone_o) pairs.push_back({p_revert, o});
        }
        return pairs;
    }

    // storage keeping synthesized revert states alive while pairs reference them
    std::deque<LabeledState> synth_p_, synth_o_;
};

} // namespace

DifferenceSet analyze(const ContractAST& ast, const DependenceFacts& facts,
                      const AnalyzeOptions& opts) {
    Analyzer a(ast, facts, opts);
    return a.run();
}

DifferenceSet analyze(const ContractAST& ast, const AnalyzeOptions& opts) {
    DependenceFacts facts = build_facts(ast);
    return analyze(ast, facts, opts);
}

} // namespace janus
