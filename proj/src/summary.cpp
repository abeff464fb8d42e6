#include "janus/summary.hpp"
#include "janus/solver.hpp"

#include <sstream>

namespace janus {

namespace {

std::string strip_exec_suffix(const std::string& name) {
    std::string out;
    out.reserve(name.size());
    for (std::size_t i = 0; i < name.size();) {
        if (name[i] == '!' && i + 1 < name.size() && name[i + 1] == 'e') {
            std::size_t j = i + 2;
            while (j < name.size() && std::isdigit(static_cast<unsigned char>(name[j]))) ++j;
            if (j > i + 2) {
                i = j;
                continue;
            }
        }
        out += name[i++];
    }
    return out;
}

// Growth flags plus the related-token rule: state variables and literal
// constants always; parameter and builtin tokens only when the growth
// direction could not be decided for a changed value, so the dependence
// still shows up in the Category-II key.
VariableSummary numeric_summary(const SymValue& pre, const SymValue& post,
                                const LabeledState& next,
                                const std::set<std::string>& rel_state,
                                const std::set<std::string>& rel_consts,
                                const std::set<std::string>& rel_params) {
    VariableSummary s;
    s.kind = VariableSummary::Kind::Numeric;
    SymValue delta = sym_sub(post, pre);
    auto bindings = Solver::unit_bindings(next.path_cond);
    delta = substitute(delta, bindings);
    Growth g = growth_direction(delta);
    s.is_increased = g == Growth::Increased;
    s.is_decreased = g == Growth::Decreased;
    s.related_const_var.insert(rel_state.begin(), rel_state.end());
    s.related_const_var.insert(rel_consts.begin(), rel_consts.end());
    if (g == Growth::Unknown)
        for (const auto& p : rel_params) s.related_const_var.insert(strip_exec_suffix(p));
    return s;
}

VariableSummary address_summary(const SymValue& pre, const SymValue& post,
                                const LabeledState& next, bool const_assigned,
                                const std::set<std::string>& rel_state,
                                const std::set<std::string>& rel_consts) {
    VariableSummary s;
    s.kind = VariableSummary::Kind::Address;
    s.is_changed = render_canonical(pre, next.sender_symbol) !=
                   render_canonical(post, next.sender_symbol);
    s.is_constant = const_assigned;
    s.related_const_var.insert(rel_state.begin(), rel_state.end());
    s.related_const_var.insert(rel_consts.begin(), rel_consts.end());
    return s;
}

VariableSummary boolean_summary(const SymValue& pre, const SymValue& post,
                                const LabeledState& next) {
    VariableSummary s;
    s.kind = VariableSummary::Kind::Boolean;
    s.bool_pre = render_canonical(pre, next.sender_symbol);
    s.bool_post = render_canonical(post, next.sender_symbol);
    return s;
}

VariableSummary mapping_summary(const MsolType& type, const LabeledState& next,
                                const std::string& var) {
    VariableSummary s;
    s.kind = VariableSummary::Kind::Mapping;
    auto it = next.map_accesses.find(var);
    if (it == next.map_accesses.end()) return s;
    for (const auto& [token, acc] : it->second) {
        switch (type.scalar) {
        case ScalarType::Numeric:
            s.keys[token] = numeric_summary(acc.pre, acc.post, next, acc.related_state_vars,
                                            acc.related_consts, acc.related_params);
            break;
        case ScalarType::Address:
            s.keys[token] = address_summary(acc.pre, acc.post, next, false,
                                            acc.related_state_vars, acc.related_consts);
            break;
        case ScalarType::Boolean:
            s.keys[token] = boolean_summary(acc.pre, acc.post, next);
            break;
        }
    }
    return s;
}

} // namespace

std::string VariableSummary::canonical() const {
    std::ostringstream os;
    switch (kind) {
    case Kind::Numeric:
        os << "num{inc=" << is_increased << ",dec=" << is_decreased << ",rel=";
        for (const auto& r : related_const_var) os << r << ",";
        os << "}";
        break;
    case Kind::Address:
        os << "addr{const=" << is_constant << ",chg=" << is_changed << ",rel=";
        for (const auto& r : related_const_var) os << r << ",";
        os << "}";
        break;
    case Kind::Boolean:
        os << "bool{" << bool_pre << "=>" << bool_post << "}";
        break;
    case Kind::Mapping:
        os << "map{";
        for (const auto& [token, sub] : keys) os << token << ":" << sub.canonical() << ",";
        os << "}";
        break;
    case Kind::Exec:
        os << "exec{s=" << success << ",r=" << revert << ",d=" << selfdestruct << "}";
        break;
    }
    return os.str();
}

nlohmann::json VariableSummary::to_json() const {
    nlohmann::json j;
    switch (kind) {
    case Kind::Numeric:
        j["is_increased"] = is_increased;
        j["is_decreased"] = is_decreased;
        j["related_const_var"] = related_const_var;
        break;
    case Kind::Address:
        j["is_constant"] = is_constant;
        j["is_changed"] = is_changed;
        j["related_const_var"] = related_const_var;
        break;
    case Kind::Boolean:
        j["pre"] = bool_pre;
        j["post"] = bool_post;
        break;
    case Kind::Mapping: {
        nlohmann::json keys_json = nlohmann::json::object();
        for (const auto& [token, sub] : keys) keys_json[token] = sub.to_json();
        j["keys"] = keys_json;
        break;
    }
    case Kind::Exec:
        j["success"] = success;
        j["revert"] = revert;
        j["selfdestruct"] = selfdestruct;
        break;
    }
    return j;
}

VariableSummary summarize(const ContractAST& ast, const DependenceFacts& facts,
                          const LabeledState& prev, const LabeledState& next,
                          const std::string& var) {
    (void)facts;
    if (var == "exec_state") {
        VariableSummary s;
        s.kind = VariableSummary::Kind::Exec;
        s.success = next.exec_state == ExecState::Success;
        s.revert = next.exec_state == ExecState::Revert;
        s.selfdestruct = next.exec_state == ExecState::Selfdestruct;
        return s;
    }
    if (var == "ether") {
        MsolType t;
        t.is_mapping = true;
        t.scalar = ScalarType::Numeric;
        return mapping_summary(t, next, "ether");
    }
    const StateVarDecl* sv = ast.find_state_var(var);
    if (!sv) throw UnknownVariableError(var);
    if (sv->type.is_mapping) return mapping_summary(sv->type, next, var);

    SymValue pre = prev.scalars.at(var);
    SymValue post = next.scalars.at(var);
    auto wit = next.scalar_writes.find(var);
    static const ScalarWrite kNoWrite{};
    const ScalarWrite& w = wit != next.scalar_writes.end() ? wit->second : kNoWrite;
    switch (sv->type.scalar) {
    case ScalarType::Numeric:
        return numeric_summary(pre, post, next, w.related_state_vars, w.related_consts,
                               w.related_params);
    case ScalarType::Address:
        return address_summary(pre, post, next, w.const_address, w.related_state_vars,
                               w.related_consts);
    case ScalarType::Boolean:
        return boolean_summary(pre, post, next);
    }
    return {};
}

StateSummary summarize_state(const ContractAST& ast, const DependenceFacts& facts,
                             const LabeledState& prev, const LabeledState& next) {
    StateSummary out;
    for (const auto& v : ast.state_vars) out[v.name] = summarize(ast, facts, prev, next, v.name);
    out["ether"] = summarize(ast, facts, prev, next, "ether");
    out["exec_state"] = summarize(ast, facts, prev, next, "exec_state");
    return out;
}

std::string Difference::canonical_key() const {
    std::ostringstream os;
    for (const auto& [var, e] : entries)
        os << var << "<p:" << e.priv.canonical() << "|o:" << e.ord.canonical() << ">";
    return os.str();
}

nlohmann::json Difference::to_json() const {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [var, e] : entries) {
        j[var] = {{"privileged", e.priv.to_json()},
                  {"ordinary", e.ord.to_json()},
                  {"labeled", e.labeled}};
    }
    return j;
}

std::optional<Difference> diff(const StateSummary& phi_p, const StateSummary& phi_o,
                               const std::set<std::string>& theta_p) {
    if (phi_p.size() != phi_o.size()) throw UniverseMismatch();
    for (const auto& [var, s] : phi_p)
        if (!phi_o.count(var)) throw UniverseMismatch();

    Difference d;
    for (const auto& [var, sp] : phi_p) {
        const VariableSummary& so = phi_o.at(var);
        bool labeled = theta_p.count(var) > 0;
        if (sp != so || labeled) d.entries[var] = DiffEntry{sp, so, labeled};
    }
    if (d.entries.empty()) return std::nullopt;
    return d;
}

std::uint64_t summary_lattice_bound(const ContractAST& ast) {
    // token universe: state vars, literal constants, parameters, builtins
    std::set<std::string> universe;
    for (const auto& v : ast.state_vars) universe.insert(v.name);
    for (const auto& f : ast.functions)
        for (const auto& p : f.params) universe.insert(f.name + "." + p.name);
    universe.insert("msg.sender");
    universe.insert("msg.value");
    universe.insert("block.number");
    universe.insert("true");
    universe.insert("false");
    std::uint64_t u = universe.size() + 8; // headroom for literal constants

    auto sat_mul = [](std::uint64_t a, std::uint64_t b) {
        if (a == 0 || b == 0) return std::uint64_t{0};
        if (a > UINT64_MAX / b) return UINT64_MAX;
        return a * b;
    };
    auto sat_pow2 = [&](std::uint64_t e) {
        return e >= 63 ? UINT64_MAX : (std::uint64_t{1} << e);
    };

    std::uint64_t related_domain = sat_pow2(u);
    std::uint64_t bool_domain = sat_mul(u + 4, u + 4); // raw pre/post pairs
    std::uint64_t per_var = 1;
    std::uint64_t total = 3; // exec_state: one-hot over three flags
    for (const auto& v : ast.state_vars) {
        if (v.type.is_mapping) {
            std::uint64_t value_bound =
                v.type.scalar == ScalarType::Boolean ? bool_domain
                                                     : sat_mul(3, related_domain);
            // one optional value summary per key token
            per_var = 1;
            for (std::uint64_t i = 0; i < u && per_var != UINT64_MAX; ++i)
                per_var = sat_mul(per_var, value_bound + 1);
        } else {
            switch (v.type.scalar) {
            case ScalarType::Numeric: per_var = sat_mul(3, related_domain); break;
            case ScalarType::Address: per_var = sat_mul(4, related_domain); break;
            case ScalarType::Boolean: per_var = bool_domain; break;
            }
        }
        total = sat_mul(total, per_var);
    }
    // ether behaves like a numeric mapping
    total = sat_mul(total, sat_pow2(u));
    // |D| is bounded by the number of distinct summary pairs
    return sat_mul(total, total);
}

} // namespace janus
