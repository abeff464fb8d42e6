#include "janus/solver.hpp"

#include <algorithm>
#include <optional>

namespace janus {

namespace {

// Atoms are the leaves the boolean enumeration assigns truth values to.
struct AtomTable {
    std::vector<SymValue> atoms;
    std::map<std::string, std::size_t> index;

    std::size_t intern(const SymValue& v) {
        std::string key = render(v);
        auto it = index.find(key);
        if (it != index.end()) return it->second;
        std::size_t id = atoms.size();
        atoms.push_back(v);
        index.emplace(std::move(key), id);
        return id;
    }
};

bool is_atom(const SymValue& v) {
    switch (v->kind) {
    case SymKind::Eq:
    case SymKind::Cmp:
        return true;
    case SymKind::Symbol:
        return v->sym_type == SymType::Bool;
    default:
        return false;
    }
}

void collect_atoms(const SymValue& v, AtomTable& table) {
    if (is_atom(v)) {
        table.intern(v);
        return;
    }
    switch (v->kind) {
    case SymKind::Not:
        collect_atoms(v->a, table);
        break;
    case SymKind::And:
    case SymKind::Or:
        collect_atoms(v->a, table);
        collect_atoms(v->b, table);
        break;
    case SymKind::Ite:
        collect_atoms(v->c, table);
        collect_atoms(v->a, table);
        collect_atoms(v->b, table);
        break;
    default:
        break; // constants carry no atoms
    }
}

bool eval_formula(const SymValue& v, const AtomTable& table, std::uint64_t assignment) {
    if (is_atom(v)) {
        auto it = table.index.find(render(v));
        return (assignment >> it->second) & 1u;
    }
    switch (v->kind) {
    case SymKind::BoolConst:
        return v->bval;
    case SymKind::Not:
        return !eval_formula(v->a, table, assignment);
    case SymKind::And:
        return eval_formula(v->a, table, assignment) && eval_formula(v->b, table, assignment);
    case SymKind::Or:
        return eval_formula(v->a, table, assignment) || eval_formula(v->b, table, assignment);
    case SymKind::Ite:
        return eval_formula(v->c, table, assignment) ? eval_formula(v->a, table, assignment)
                                                     : eval_formula(v->b, table, assignment);
    default:
        return true; // not a boolean formula; treat as unconstrained
    }
}

// ---- address theory: union-find with disequality edges -----------------

class AddrClasses {
public:
    std::size_t id_of(const std::string& term) {
        auto it = ids_.find(term);
        if (it != ids_.end()) return it->second;
        std::size_t id = parent_.size();
        ids_.emplace(term, id);
        parent_.push_back(id);
        return id;
    }
    std::size_t find(std::size_t x) {
        while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

private:
    std::map<std::string, std::size_t> ids_;
    std::vector<std::size_t> parent_;
};

// ---- numeric theory: sign constraints over normalized sums -------------

struct SignSet {
    bool neg = true, zero = true, pos = true;
    bool empty() const { return !neg && !zero && !pos; }
};

struct SumInfo {
    SymValue sum;
    SignSet allowed;
};

// Canonical key for a sum, with polarity normalized so that a sum and its
// negation share one constraint bucket.
std::pair<std::string, bool> sum_key(const SymValue& sum) {
    SymValue neg = sym_neg(sum);
    std::string s = render(sum);
    std::string n = render(neg);
    if (s <= n) return {s, false};
    return {n, true};
}

void constrain(SignSet& set, CmpRel rel, bool flipped) {
    CmpRel r = rel;
    if (flipped) {
        switch (rel) {
        case CmpRel::Lt: r = CmpRel::Gt; break;
        case CmpRel::Le: r = CmpRel::Ge; break;
        case CmpRel::Gt: r = CmpRel::Lt; break;
        case CmpRel::Ge: r = CmpRel::Le; break;
        default: break;
        }
    }
    switch (r) {
    case CmpRel::Eq: set.neg = false; set.pos = false; break;
    case CmpRel::Ne: set.zero = false; break;
    case CmpRel::Lt: set.zero = false; set.pos = false; break;
    case CmpRel::Le: set.pos = false; break;
    case CmpRel::Gt: set.neg = false; set.zero = false; break;
    case CmpRel::Ge: set.neg = false; break;
    }
}

CmpRel negate_rel(CmpRel rel) {
    switch (rel) {
    case CmpRel::Eq: return CmpRel::Ne;
    case CmpRel::Ne: return CmpRel::Eq;
    case CmpRel::Lt: return CmpRel::Ge;
    case CmpRel::Le: return CmpRel::Gt;
    case CmpRel::Gt: return CmpRel::Le;
    case CmpRel::Ge: return CmpRel::Lt;
    }
    return CmpRel::Eq;
}

// Possible range classes of a sum whose atoms are non-negative.
struct RangeClass {
    bool unbounded_below = false;
    bool unbounded_above = false;
    std::int64_t point = 0; // value when fully bounded (no atoms pull either way)
};

std::optional<RangeClass> range_of(const SymValue& sum) {
    RangeClass rc;
    if (sum->kind == SymKind::NumConst) {
        rc.point = sum->num;
        return rc;
    }
    auto handle_atom = [&](std::int64_t coef, const SymValue& atom) -> bool {
        if (!atom->nonneg) return false;
        if (coef > 0) rc.unbounded_above = true;
        if (coef < 0) rc.unbounded_below = true;
        return true;
    };
    if (sum->kind == SymKind::Symbol || sum->kind == SymKind::Product) {
        if (!handle_atom(1, sum)) return std::nullopt;
        rc.point = 0;
        return rc;
    }
    if (sum->kind == SymKind::Sum) {
        for (const auto& [coef, atom] : sum->terms)
            if (!handle_atom(coef, atom)) return std::nullopt;
        rc.point = sum->constant;
        return rc;
    }
    return std::nullopt;
}

bool sign_feasible(const RangeClass& rc, const SignSet& allowed) {
    std::int64_t lo_point = rc.unbounded_below ? 0 : rc.point; // only point matters when bounded
    bool can_neg = rc.unbounded_below || rc.point < 0;
    bool can_zero = (rc.unbounded_below || rc.point <= 0) && (rc.unbounded_above || rc.point >= 0);
    bool can_pos = rc.unbounded_above || rc.point > 0;
    (void)lo_point;
    return (allowed.neg && can_neg) || (allowed.zero && can_zero) || (allowed.pos && can_pos);
}

// Theory check of one total truth assignment over the atoms.
SatResult theory_check(const AtomTable& table, std::uint64_t assignment) {
    AddrClasses addr;
    std::vector<std::pair<std::size_t, std::size_t>> diseqs;
    std::vector<std::size_t> const_ids;
    std::vector<std::int64_t> const_vals;
    std::vector<std::pair<CmpRel, SymValue>> numeric; // effective rel on sum

    auto note_addr_term = [&](const SymValue& t) {
        std::size_t id = addr.id_of(render(t));
        if (t->kind == SymKind::AddrConst) {
            const_ids.push_back(id);
            const_vals.push_back(t->num);
        }
        return id;
    };

    for (std::size_t i = 0; i < table.atoms.size(); ++i) {
        const SymValue& atom = table.atoms[i];
        bool truth = (assignment >> i) & 1u;
        if (atom->kind == SymKind::Eq) {
            if (is_addr_kind(atom->a) || is_addr_kind(atom->b)) {
                std::size_t a = note_addr_term(atom->a);
                std::size_t b = note_addr_term(atom->b);
                if (truth) addr.unite(a, b);
                else diseqs.push_back({a, b});
            }
            // boolean equality atoms are treated as free (over-approximate)
        } else if (atom->kind == SymKind::Cmp) {
            numeric.push_back({truth ? atom->rel : negate_rel(atom->rel), atom->a});
        }
        // bool symbols: free
    }

    // distinct address constants must stay in distinct classes
    for (std::size_t i = 0; i < const_ids.size(); ++i)
        for (std::size_t j = i + 1; j < const_ids.size(); ++j)
            if (const_vals[i] != const_vals[j] &&
                addr.find(const_ids[i]) == addr.find(const_ids[j]))
                return SatResult::Unsat;
    for (const auto& [a, b] : diseqs)
        if (addr.find(a) == addr.find(b)) return SatResult::Unsat;

    // unit equality propagation: single-atom sums pinned to a constant
    std::map<std::string, std::int64_t> bindings;
    bool changed = true;
    int guard = 0;
    while (changed && guard++ < 8) {
        changed = false;
        for (auto& [rel, sum] : numeric) {
            if (rel != CmpRel::Eq) continue;
            SymValue s = substitute(sum, bindings);
            if (s->kind == SymKind::Symbol && !bindings.count(s->name)) {
                bindings[s->name] = 0;
                changed = true;
            } else if (s->kind == SymKind::Sum && s->terms.size() == 1) {
                const auto& [coef, atom] = s->terms[0];
                if (atom->kind == SymKind::Symbol && s->constant % coef == 0 &&
                    !bindings.count(atom->name)) {
                    bindings[atom->name] = -s->constant / coef;
                    changed = true;
                }
            }
        }
    }
    for (const auto& [name, value] : bindings)
        if (value < 0) return SatResult::Unsat; // all engine symbols are uint-like

    std::map<std::string, SumInfo> buckets;
    bool unknown = false;
    for (const auto& [rel, raw] : numeric) {
        SymValue sum = substitute(raw, bindings);
        if (sum->kind == SymKind::NumConst) {
            SignSet s;
            constrain(s, rel, false);
            std::int64_t v = sum->num;
            bool ok = (v < 0 && s.neg) || (v == 0 && s.zero) || (v > 0 && s.pos);
            if (!ok) return SatResult::Unsat;
            continue;
        }
        auto [key, flipped] = sum_key(sum);
        auto it = buckets.find(key);
        if (it == buckets.end()) it = buckets.emplace(key, SumInfo{flipped ? sym_neg(sum) : sum, {}}).first;
        constrain(it->second.allowed, rel, flipped);
        if (it->second.allowed.empty()) return SatResult::Unsat;
    }
    for (const auto& [key, info] : buckets) {
        auto rc = range_of(info.sum);
        if (!rc) {
            unknown = true;
            continue;
        }
        if (!sign_feasible(*rc, info.allowed)) return SatResult::Unsat;
    }
    return unknown ? SatResult::Unknown : SatResult::Sat;
}

} // namespace

SatResult Solver::check(const std::vector<SymValue>& conjuncts) {
    AtomTable table;
    for (const auto& c : conjuncts) {
        if (c->kind == SymKind::BoolConst && !c->bval) return SatResult::Unsat;
        collect_atoms(c, table);
    }
    if (table.atoms.size() > kMaxAtoms) return SatResult::Unknown;

    bool saw_unknown = false;
    std::uint64_t limit = 1ull << table.atoms.size();
    for (std::uint64_t assignment = 0; assignment < limit; ++assignment) {
        bool all = true;
        for (const auto& c : conjuncts) {
            if (!eval_formula(c, table, assignment)) {
                all = false;
                break;
            }
        }
        if (!all) continue;
        SatResult r = theory_check(table, assignment);
        if (r == SatResult::Sat) return SatResult::Sat;
        if (r == SatResult::Unknown) saw_unknown = true;
    }
    return saw_unknown ? SatResult::Unknown : SatResult::Unsat;
}

bool Solver::entails(const std::vector<SymValue>& pc, const SymValue& prop) {
    std::vector<SymValue> neg = pc;
    neg.push_back(sym_not(prop));
    return check(neg) == SatResult::Unsat;
}

std::map<std::string, std::int64_t> Solver::unit_bindings(
    const std::vector<SymValue>& conjuncts) {
    std::map<std::string, std::int64_t> bindings;
    bool changed = true;
    int guard = 0;
    while (changed && guard++ < 8) {
        changed = false;
        for (const auto& c : conjuncts) {
            if (c->kind != SymKind::Cmp || c->rel != CmpRel::Eq) continue;
            SymValue s = substitute(c->a, bindings);
            if (s->kind == SymKind::Symbol && !bindings.count(s->name)) {
                bindings[s->name] = 0;
                changed = true;
            } else if (s->kind == SymKind::Sum && s->terms.size() == 1) {
                const auto& [coef, atom] = s->terms[0];
                if (atom->kind == SymKind::Symbol && coef != 0 && s->constant % coef == 0 &&
                    !bindings.count(atom->name)) {
                    std::int64_t v = -s->constant / coef;
                    if (v >= 0 || !atom->nonneg) {
                        bindings[atom->name] = v;
                        changed = true;
                    }
                }
            }
        }
    }
    return bindings;
}

} // namespace janus
