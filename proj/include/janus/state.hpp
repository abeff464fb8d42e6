#pragma once

#include "janus/ast.hpp"
#include "janus/symval.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace janus {

enum class ExecState { Success, Revert, Selfdestruct };

inline const char* exec_state_name(ExecState s) {
    switch (s) {
    case ExecState::Success: return "success";
    case ExecState::Revert: return "revert";
    case ExecState::Selfdestruct: return "selfdestruct";
    }
    return "?";
}

struct MappingCell {
    SymValue key;      // address value the cell is keyed by
    std::string token; // canonical key token at creation ("msg.sender", "_to", ...)
    SymValue value;
};

struct MappingStore {
    std::vector<MappingCell> cells; // insertion order
};

/// Change record for one mapping token within a single transition; drives
/// mapping summaries and the canonical state comparison.
struct MappingAccess {
    SymValue pre;
    SymValue post;
    bool written = false;
    std::set<std::string> related_state_vars;
    std::set<std::string> related_consts;
    std::set<std::string> related_params;
};

/// Category-II inputs for a scalar variable within one transition.
struct ScalarWrite {
    std::set<std::string> related_state_vars;
    std::set<std::string> related_consts;
    std::set<std::string> related_params;
    bool assigned = false;
    bool const_address = false; // last assignment stored a literal address
};

/// The labeled state l = (sigma, pi, theta): value maps, executed-statement
/// history, and the label map that carries forgotten differences forward.
struct LabeledState {
    std::map<std::string, SymValue> scalars;
    std::map<std::string, MappingStore> mappings; // state mappings plus "ether"
    std::vector<StatementId> pi;                  // cumulative executed history
    std::size_t pi_offset = 0;                    // start of the latest transition
    std::vector<std::string> pi_projected; // caller-independent steps of the latest transition
    std::set<std::string> theta;           // labeled variables
    std::vector<SymValue> path_cond;
    ExecState exec_state = ExecState::Success;
    bool approximate = false;
    bool destroyed = false;
    int exec_seq = 0; // executions applied so far (scopes fresh names)

    // per-transition change records
    std::map<std::string, std::map<std::string, MappingAccess>> map_accesses;
    std::map<std::string, ScalarWrite> scalar_writes;
    std::map<std::string, SymValue> scalars_pre; // snapshot at transition start

    // sender symbol of the execution that produced this state; renamed to
    // "msg.sender" wherever values are compared across the two roles
    std::string sender_symbol;

    bool labeled(const std::string& var) const { return theta.count(var) > 0; }
};

enum class CallerRole { Privileged, Ordinary };

struct CallerContext {
    CallerRole role = CallerRole::Ordinary;
    SymValue sender;
    std::vector<SymValue> assumptions; // role constraints joined to the path
};

} // namespace janus
