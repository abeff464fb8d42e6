#include "janus/symval.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace janus {

namespace {

SymValue node(SymNode n) { return std::make_shared<const SymNode>(std::move(n)); }

// Decomposes any numeric value into (terms, constant).
void as_sum(const SymValue& v, std::vector<std::pair<std::int64_t, SymValue>>& terms,
            std::int64_t& constant) {
    switch (v->kind) {
    case SymKind::NumConst:
        constant += v->num;
        return;
    case SymKind::Symbol:
    case SymKind::Product:
        terms.push_back({1, v});
        return;
    case SymKind::Sum:
        for (const auto& t : v->terms) terms.push_back(t);
        constant += v->constant;
        return;
    default:
        // Non-linear or non-numeric: treated as an opaque atom.
        terms.push_back({1, v});
        return;
    }
}

SymValue normalize_sum(std::vector<std::pair<std::int64_t, SymValue>> terms,
                       std::int64_t constant) {
    std::map<std::string, std::pair<std::int64_t, SymValue>> merged;
    for (auto& [coef, atom] : terms) {
        auto key = render(atom);
        auto it = merged.find(key);
        if (it == merged.end()) merged.emplace(key, std::make_pair(coef, atom));
        else it->second.first += coef;
    }
    std::vector<std::pair<std::int64_t, SymValue>> out;
    for (auto& [key, ca] : merged)
        if (ca.first != 0) out.push_back({ca.first, ca.second});
    if (out.empty()) return make_num(constant);
    if (out.size() == 1 && out[0].first == 1 && constant == 0) return out[0].second;
    SymNode n;
    n.kind = SymKind::Sum;
    n.terms = std::move(out);
    n.constant = constant;
    return node(std::move(n));
}

} // namespace

SymValue make_num(std::int64_t v) {
    SymNode n;
    n.kind = SymKind::NumConst;
    n.num = v;
    return node(std::move(n));
}

SymValue make_addr_const(std::int64_t id) {
    SymNode n;
    n.kind = SymKind::AddrConst;
    n.num = id;
    return node(std::move(n));
}

SymValue make_bool(bool v) {
    SymNode n;
    n.kind = SymKind::BoolConst;
    n.bval = v;
    return node(std::move(n));
}

SymValue make_symbol(const std::string& name, SymType type, bool nonneg) {
    SymNode n;
    n.kind = SymKind::Symbol;
    n.name = name;
    n.sym_type = type;
    n.nonneg = nonneg;
    return node(std::move(n));
}

SymValue sym_add(const SymValue& a, const SymValue& b) {
    std::vector<std::pair<std::int64_t, SymValue>> terms;
    std::int64_t c = 0;
    as_sum(a, terms, c);
    as_sum(b, terms, c);
    return normalize_sum(std::move(terms), c);
}

SymValue sym_neg(const SymValue& a) {
    std::vector<std::pair<std::int64_t, SymValue>> terms;
    std::int64_t c = 0;
    as_sum(a, terms, c);
    for (auto& t : terms) t.first = -t.first;
    return normalize_sum(std::move(terms), -c);
}

SymValue sym_sub(const SymValue& a, const SymValue& b) { return sym_add(a, sym_neg(b)); }

SymValue sym_mul(const SymValue& a, const SymValue& b) {
    // (t1 + c1)(t2 + c2) distributed; products of atoms become opaque atoms
    std::vector<std::pair<std::int64_t, SymValue>> ta, tb;
    std::int64_t ca = 0, cb = 0;
    as_sum(a, ta, ca);
    as_sum(b, tb, cb);
    std::vector<std::pair<std::int64_t, SymValue>> out;
    std::int64_t constant = ca * cb;
    for (const auto& [c1, a1] : ta) out.push_back({c1 * cb, a1});
    for (const auto& [c2, a2] : tb) out.push_back({c2 * ca, a2});
    for (const auto& [c1, a1] : ta) {
        for (const auto& [c2, a2] : tb) {
            std::vector<SymValue> factors;
            auto flatten = [&](const SymValue& x) {
                if (x->kind == SymKind::Product)
                    for (const auto& f : x->factors) factors.push_back(f);
                else factors.push_back(x);
            };
            flatten(a1);
            flatten(a2);
            std::sort(factors.begin(), factors.end(),
                      [](const SymValue& l, const SymValue& r) { return render(l) < render(r); });
            SymNode p;
            p.kind = SymKind::Product;
            p.nonneg = true;
            for (const auto& f : factors) p.nonneg = p.nonneg && f->nonneg;
            p.factors = std::move(factors);
            out.push_back({c1 * c2, node(std::move(p))});
        }
    }
    return normalize_sum(std::move(out), constant);
}

SymValue sym_not(const SymValue& a) {
    if (a->kind == SymKind::BoolConst) return make_bool(!a->bval);
    if (a->kind == SymKind::Not) return a->a;
    SymNode n;
    n.kind = SymKind::Not;
    n.a = a;
    return node(std::move(n));
}

SymValue sym_and(const SymValue& a, const SymValue& b) {
    if (a->kind == SymKind::BoolConst) return a->bval ? b : a;
    if (b->kind == SymKind::BoolConst) return b->bval ? a : b;
    SymNode n;
    n.kind = SymKind::And;
    n.a = a;
    n.b = b;
    return node(std::move(n));
}

SymValue sym_or(const SymValue& a, const SymValue& b) {
    if (a->kind == SymKind::BoolConst) return a->bval ? a : b;
    if (b->kind == SymKind::BoolConst) return b->bval ? b : a;
    SymNode n;
    n.kind = SymKind::Or;
    n.a = a;
    n.b = b;
    return node(std::move(n));
}

SymValue sym_eq_addr(const SymValue& a, const SymValue& b) {
    if (a->kind == SymKind::AddrConst && b->kind == SymKind::AddrConst)
        return make_bool(a->num == b->num);
    if (sym_equal(a, b)) return make_bool(true);
    SymNode n;
    n.kind = SymKind::Eq;
    if (render(a) <= render(b)) {
        n.a = a;
        n.b = b;
    } else {
        n.a = b;
        n.b = a;
    }
    return node(std::move(n));
}

SymValue sym_cmp(CmpRel rel, const SymValue& lhs, const SymValue& rhs) {
    if (is_addr_kind(lhs) || is_addr_kind(rhs)) {
        SymValue eq = sym_eq_addr(lhs, rhs);
        return rel == CmpRel::Eq ? eq : sym_not(eq);
    }
    if (is_bool_kind(lhs) || is_bool_kind(rhs)) {
        // bool equality: fold against constants
        if (lhs->kind == SymKind::BoolConst)
            return rel == CmpRel::Eq ? (lhs->bval ? rhs : sym_not(rhs))
                                     : (lhs->bval ? sym_not(rhs) : rhs);
        if (rhs->kind == SymKind::BoolConst)
            return rel == CmpRel::Eq ? (rhs->bval ? lhs : sym_not(lhs))
                                     : (rhs->bval ? sym_not(lhs) : lhs);
        SymNode n;
        n.kind = SymKind::Eq;
        n.a = lhs;
        n.b = rhs;
        SymValue eq = node(std::move(n));
        return rel == CmpRel::Eq ? eq : sym_not(eq);
    }
    SymValue delta = sym_sub(lhs, rhs);
    if (delta->kind == SymKind::NumConst) {
        std::int64_t d = delta->num;
        switch (rel) {
        case CmpRel::Eq: return make_bool(d == 0);
        case CmpRel::Ne: return make_bool(d != 0);
        case CmpRel::Lt: return make_bool(d < 0);
        case CmpRel::Le: return make_bool(d <= 0);
        case CmpRel::Gt: return make_bool(d > 0);
        case CmpRel::Ge: return make_bool(d >= 0);
        }
    }
    SymNode n;
    n.kind = SymKind::Cmp;
    n.rel = rel;
    n.a = delta;
    return node(std::move(n));
}

SymValue sym_ite(const SymValue& cond, const SymValue& then_v, const SymValue& else_v) {
    if (cond->kind == SymKind::BoolConst) return cond->bval ? then_v : else_v;
    SymNode n;
    n.kind = SymKind::Ite;
    n.c = cond;
    n.a = then_v;
    n.b = else_v;
    return node(std::move(n));
}

bool is_bool_kind(const SymValue& v) {
    switch (v->kind) {
    case SymKind::BoolConst:
    case SymKind::Eq:
    case SymKind::Cmp:
    case SymKind::Not:
    case SymKind::And:
    case SymKind::Or:
        return true;
    case SymKind::Symbol:
        return v->sym_type == SymType::Bool;
    case SymKind::Ite:
        return is_bool_kind(v->a);
    default:
        return false;
    }
}

bool is_addr_kind(const SymValue& v) {
    if (v->kind == SymKind::AddrConst) return true;
    if (v->kind == SymKind::Symbol) return v->sym_type == SymType::Addr;
    if (v->kind == SymKind::Ite) return is_addr_kind(v->a);
    return false;
}

namespace {

const char* rel_text(CmpRel rel) {
    switch (rel) {
    case CmpRel::Eq: return "==";
    case CmpRel::Ne: return "!=";
    case CmpRel::Lt: return "<";
    case CmpRel::Le: return "<=";
    case CmpRel::Gt: return ">";
    case CmpRel::Ge: return ">=";
    }
    return "?";
}

void render_impl(std::ostream& os, const SymValue& v,
                 const std::map<std::string, std::string>* renames) {
    switch (v->kind) {
    case SymKind::NumConst: os << v->num; break;
    case SymKind::AddrConst: os << "addr:" << v->num; break;
    case SymKind::BoolConst: os << (v->bval ? "true" : "false"); break;
    case SymKind::Symbol: {
        if (renames) {
            auto it = renames->find(v->name);
            if (it != renames->end()) {
                os << it->second;
                break;
            }
        }
        os << v->name;
        break;
    }
    case SymKind::Product: {
        os << "(*";
        for (const auto& f : v->factors) {
            os << " ";
            render_impl(os, f, renames);
        }
        os << ")";
        break;
    }
    case SymKind::Sum: {
        os << "(+ " << v->constant;
        for (const auto& [coef, atom] : v->terms) {
            os << " " << coef << "*";
            render_impl(os, atom, renames);
        }
        os << ")";
        break;
    }
    case SymKind::Eq:
        os << "(= ";
        render_impl(os, v->a, renames);
        os << " ";
        render_impl(os, v->b, renames);
        os << ")";
        break;
    case SymKind::Cmp:
        os << "(" << rel_text(v->rel) << " ";
        render_impl(os, v->a, renames);
        os << " 0)";
        break;
    case SymKind::Not:
        os << "(! ";
        render_impl(os, v->a, renames);
        os << ")";
        break;
    case SymKind::And:
    case SymKind::Or:
        os << (v->kind == SymKind::And ? "(&& " : "(|| ");
        render_impl(os, v->a, renames);
        os << " ";
        render_impl(os, v->b, renames);
        os << ")";
        break;
    case SymKind::Ite:
        os << "(ite ";
        render_impl(os, v->c, renames);
        os << " ";
        render_impl(os, v->a, renames);
        os << " ";
        render_impl(os, v->b, renames);
        os << ")";
        break;
    }
}

} // namespace

std::string render(const SymValue& v) {
    std::ostringstream os;
    render_impl(os, v, nullptr);
    return os.str();
}

std::string render_renamed(const SymValue& v,
                           const std::map<std::string, std::string>& renames) {
    std::ostringstream os;
    render_impl(os, v, &renames);
    return os.str();
}

std::string render_canonical(const SymValue& v, const std::string& sender_symbol) {
    std::map<std::string, std::string> renames;
    if (!sender_symbol.empty()) renames[sender_symbol] = "msg.sender";
    std::string s = render_renamed(v, renames);
    // strip per-execution suffixes "!e<digits>"
    std::string out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size();) {
        if (s[i] == '!' && i + 1 < s.size() && s[i + 1] == 'e') {
            std::size_t j = i + 2;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            if (j > i + 2) {
                i = j;
                continue;
            }
        }
        out += s[i++];
    }
    return out;
}

bool sym_equal(const SymValue& a, const SymValue& b) {
    if (a == b) return true;
    if (a->kind != b->kind) return false;
    return render(a) == render(b);
}

SymValue substitute(const SymValue& v, const std::map<std::string, std::int64_t>& bindings) {
    if (bindings.empty()) return v;
    switch (v->kind) {
    case SymKind::Symbol: {
        auto it = bindings.find(v->name);
        if (it != bindings.end() && v->sym_type == SymType::Num) return make_num(it->second);
        return v;
    }
    case SymKind::Product: {
        std::int64_t coef = 1;
        std::vector<SymValue> rest;
        for (const auto& f : v->factors) {
            SymValue s = substitute(f, bindings);
            if (s->kind == SymKind::NumConst) coef *= s->num;
            else rest.push_back(s);
        }
        if (rest.empty()) return make_num(coef);
        SymValue prod = rest[0];
        for (std::size_t i = 1; i < rest.size(); ++i) prod = sym_mul(prod, rest[i]);
        return sym_mul(make_num(coef), prod);
    }
    case SymKind::Sum: {
        SymValue acc = make_num(v->constant);
        for (const auto& [coef, atom] : v->terms)
            acc = sym_add(acc, sym_mul(make_num(coef), substitute(atom, bindings)));
        return acc;
    }
    default:
        return v;
    }
}

Growth growth_direction(const SymValue& delta) {
    if (delta->kind == SymKind::NumConst) {
        if (delta->num == 0) return Growth::Unchanged;
        return delta->num > 0 ? Growth::Increased : Growth::Decreased;
    }
    std::vector<std::pair<std::int64_t, SymValue>> terms;
    std::int64_t constant = 0;
    as_sum(delta, terms, constant);
    bool can_down = constant < 0;
    bool can_up = constant > 0;
    for (const auto& [coef, atom] : terms) {
        if (!atom->nonneg) return Growth::Unknown; // unconstrained atom
        if (coef > 0) can_up = true;
        if (coef < 0) can_down = true;
    }
    if (can_up && !can_down) return Growth::Increased;
    if (can_down && !can_up) return Growth::Decreased;
    if (!can_up && !can_down) return Growth::Unchanged;
    return Growth::Unknown;
}

void collect_symbols(const SymValue& v, std::vector<std::string>& out) {
    switch (v->kind) {
    case SymKind::Symbol:
        out.push_back(v->name);
        break;
    case SymKind::Product:
        for (const auto& f : v->factors) collect_symbols(f, out);
        break;
    case SymKind::Sum:
        for (const auto& [coef, atom] : v->terms) collect_symbols(atom, out);
        break;
    case SymKind::Eq:
    case SymKind::And:
    case SymKind::Or:
        collect_symbols(v->a, out);
        collect_symbols(v->b, out);
        break;
    case SymKind::Cmp:
    case SymKind::Not:
        collect_symbols(v->a, out);
        break;
    case SymKind::Ite:
        collect_symbols(v->c, out);
        collect_symbols(v->a, out);
        collect_symbols(v->b, out);
        break;
    default:
        break;
    }
}

} // namespace janus
