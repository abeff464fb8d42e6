#pragma once

#include "janus/engine.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>

namespace janus {

/// Finite per-variable abstraction of one transition. Field names follow
/// the serialized report schema: is_increased / is_decreased /
/// related_const_var for numerics, is_constant / is_changed for addresses,
/// raw pre/post values for booleans, per-key-token summaries for mappings,
/// success / revert / selfdestruct for exec_state.
struct VariableSummary {
    enum class Kind { Numeric, Address, Boolean, Mapping, Exec };
    Kind kind = Kind::Numeric;

    bool is_increased = false;
    bool is_decreased = false;
    std::set<std::string> related_const_var;

    bool is_constant = false;
    bool is_changed = false;

    std::string bool_pre;
    std::string bool_post;

    std::map<std::string, VariableSummary> keys; // mapping: token -> value summary

    bool success = false;
    bool revert = false;
    bool selfdestruct = false;

    std::string canonical() const;
    nlohmann::json to_json() const;
};

inline bool operator==(const VariableSummary& a, const VariableSummary& b) {
    return a.canonical() == b.canonical();
}
inline bool operator!=(const VariableSummary& a, const VariableSummary& b) { return !(a == b); }

using StateSummary = std::map<std::string, VariableSummary>;

/// phi: summary of one variable across the transition prev -> next.
VariableSummary summarize(const ContractAST& ast, const DependenceFacts& facts,
                          const LabeledState& prev, const LabeledState& next,
                          const std::string& var);

/// Phi: summaries for every state variable plus ether and exec_state.
StateSummary summarize_state(const ContractAST& ast, const DependenceFacts& facts,
                             const LabeledState& prev, const LabeledState& next);

struct DiffEntry {
    VariableSummary priv;
    VariableSummary ord;
    bool labeled = false;
};

struct Difference {
    std::map<std::string, DiffEntry> entries;

    std::set<std::string> variables() const {
        std::set<std::string> out;
        for (const auto& [v, e] : entries) out.insert(v);
        return out;
    }
    /// Identity for set membership in D: variable set plus summary pairs.
    /// Label flags and provenance are reporting data, not identity.
    std::string canonical_key() const;
    nlohmann::json to_json() const;
};

struct UniverseMismatch : std::runtime_error {
    UniverseMismatch() : std::runtime_error("summary maps cover different variable universes") {}
};

/// Delta: entries for every variable whose summaries disagree or which is
/// labeled in the privileged successor; nullopt when the difference is empty.
std::optional<Difference> diff(const StateSummary& phi_p, const StateSummary& phi_o,
                               const std::set<std::string>& theta_p);

/// Saturating upper bound on the number of distinct differences a contract
/// admits; finite because every summary domain is finite.
std::uint64_t summary_lattice_bound(const ContractAST& ast);

} // namespace janus
