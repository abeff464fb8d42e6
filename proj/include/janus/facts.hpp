#pragma once

#include "janus/ast.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace janus {

/// Per-statement dependence information, computed once per declaring
/// construct (function, constructor or modifier). Local variables are
/// expanded to the state variables, constants and parameters that reach
/// them, path-insensitively.
struct StatementFacts {
    StatementId id;
    const Stmt* stmt = nullptr;
    bool is_assignment = false;
    std::string target;                     // state-var target of an assignment
    std::set<std::string> rhs_state_vars;   // state vars reaching RHS + index
    std::set<std::string> rhs_consts;       // literal constants, rendered
    std::set<std::string> rhs_params;       // parameter / builtin tokens
    std::set<std::string> guard_state_vars; // state vars read by enclosing guards
    bool caller_dependent = false;          // mentions msg.sender, incl. via guards
};

struct DependenceFacts {
    std::map<std::string, std::set<std::string>> reads;  // function -> state vars
    std::map<std::string, std::set<std::string>> writes; // function -> state vars
    std::set<std::pair<std::string, std::string>> data_dep; // (left, right)
    std::set<std::pair<StatementId, std::string>> ctrl_dep; // (stmt, guard var)
    std::map<StatementId, StatementFacts> per_stmt;

    // Assignment statements of a function with modifiers and internal calls
    // expanded, in source order; drives static label propagation.
    std::map<std::string, std::vector<StatementId>> expanded_assignments;

    const StatementFacts* stmt_facts(const StatementId& id) const {
        auto it = per_stmt.find(id);
        return it == per_stmt.end() ? nullptr : &it->second;
    }
};

DependenceFacts build_facts(const ContractAST& ast);

struct UnknownVariableError : std::runtime_error {
    explicit UnknownVariableError(const std::string& var)
        : std::runtime_error("unknown variable in difference: '" + var + "'") {}
};

/// Every function that reads (in an expression, guard or index) any of the
/// given state variables. Synthetic names (exec_state, ether) are ignored;
/// any other non-state-variable name is an error.
std::set<std::string> related_funcs_search(const ContractAST& ast, const DependenceFacts& facts,
                                           const std::set<std::string>& delta_vars);

} // namespace janus
