#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace janus {

// Symbolic value domain for the execution engine. Numeric values are kept
// in a normalized linear-sum form over atoms (symbols and products of
// symbols); address and boolean values are small expression trees. All
// numeric symbols introduced by the engine model uint contents and are
// marked non-negative, which the sign analysis and the solver rely on.

enum class SymKind {
    NumConst,
    AddrConst,
    BoolConst,
    Symbol,
    Product, // product of two or more symbols, an opaque numeric atom
    Sum,     // linear combination of atoms plus a constant
    Eq,      // address or boolean equality
    Cmp,     // numeric comparison: sum REL 0
    Not,
    And,
    Or,
    Ite,
};

enum class SymType { Num, Addr, Bool };

enum class CmpRel { Eq, Ne, Lt, Le, Gt, Ge };

struct SymNode;
using SymValue = std::shared_ptr<const SymNode>;

struct SymNode {
    SymKind kind;
    std::int64_t num = 0; // NumConst value / AddrConst id
    bool bval = false;
    std::string name;                // Symbol
    SymType sym_type = SymType::Num; // Symbol
    bool nonneg = false;             // Symbol/Product: models uint contents
    std::vector<SymValue> factors;   // Product, sorted by render
    std::vector<std::pair<std::int64_t, SymValue>> terms; // Sum, sorted by atom
    std::int64_t constant = 0;                            // Sum
    SymValue a, b, c; // Eq(a,b) Cmp(a REL 0) Not(a) And/Or(a,b) Ite(c,a,b)
    CmpRel rel = CmpRel::Eq;
};

SymValue make_num(std::int64_t v);
SymValue make_addr_const(std::int64_t id);
SymValue make_bool(bool v);
SymValue make_symbol(const std::string& name, SymType type, bool nonneg = true);

SymValue sym_add(const SymValue& a, const SymValue& b);
SymValue sym_sub(const SymValue& a, const SymValue& b);
SymValue sym_mul(const SymValue& a, const SymValue& b);
SymValue sym_neg(const SymValue& a);

SymValue sym_not(const SymValue& a);
SymValue sym_and(const SymValue& a, const SymValue& b);
SymValue sym_or(const SymValue& a, const SymValue& b);
SymValue sym_cmp(CmpRel rel, const SymValue& lhs, const SymValue& rhs);
SymValue sym_eq_addr(const SymValue& a, const SymValue& b);
SymValue sym_ite(const SymValue& cond, const SymValue& then_v, const SymValue& else_v);

bool is_bool_kind(const SymValue& v);
bool is_addr_kind(const SymValue& v);

/// Deterministic canonical rendering; structural equality of values is
/// rendering equality.
std::string render(const SymValue& v);

/// Rendering with symbol renaming (used to canonicalize caller-dependent
/// symbols before summaries are compared).
std::string render_renamed(const SymValue& v,
                           const std::map<std::string, std::string>& renames);

/// Role- and round-insensitive rendering for summary and state comparison:
/// the executing sender becomes msg.sender and per-execution name suffixes
/// ("!e<N>") are stripped, so the same function executed by either role or
/// in any round renders its effects identically.
std::string render_canonical(const SymValue& v, const std::string& sender_symbol);

bool sym_equal(const SymValue& a, const SymValue& b);

/// Replaces numeric symbols by constants and renormalizes.
SymValue substitute(const SymValue& v, const std::map<std::string, std::int64_t>& bindings);

enum class Growth { Unchanged, Increased, Decreased, Unknown };

/// Direction of a normalized numeric delta. `Increased` means the value can
/// only go up (all contributions non-negative and not identically zero);
/// `Decreased` is symmetric; mixed-sign deltas are `Unknown`.
Growth growth_direction(const SymValue& delta);

void collect_symbols(const SymValue& v, std::vector<std::string>& out);

} // namespace janus
