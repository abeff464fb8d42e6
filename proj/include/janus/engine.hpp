#pragma once

#include "janus/ast.hpp"
#include "janus/facts.hpp"
#include "janus/state.hpp"

#include <iosfwd>
#include <set>

namespace janus {

struct EngineOptions {
    int max_paths = 64;
    bool label_propagation = true; // mutation hook for the theorem harness
    bool trace = false;
    std::ostream* trace_out = nullptr;
};

struct ConstructorRevert : std::runtime_error {
    ConstructorRevert() : std::runtime_error("constructor has no feasible success path") {}
};

/// Fixpoint of: address-typed state variables assigned only in the
/// constructor (or never), plus those assignable only inside functions whose
/// guards pin msg.sender to an already-identified privileged variable.
std::set<std::string> identify_privileged(const ContractAST& ast, const DependenceFacts& facts);

/// Initial labeled state after the constructor, executed by the deployer.
LabeledState exec_constructor(const ContractAST& ast, const DependenceFacts& facts);

CallerContext make_privileged_context(const ContractAST& ast, const LabeledState& l,
                                      const std::set<std::string>& privileged);
CallerContext make_ordinary_context(const ContractAST& ast, const LabeledState& l,
                                    const std::set<std::string>& privileged);

/// Fresh parameter symbols for one paired execution; shared between the
/// privileged and ordinary runs so both see identical inputs.
std::map<std::string, SymValue> fresh_params(const FunctionDecl& f, int exec_seq);

/// Symbolically executes `f` from `l` under the given caller, one successor
/// per feasible path, propagating labels from l.theta. Reverting paths roll
/// sigma back and keep every pre-state label.
std::vector<LabeledState> labeled_symbolic_exec(const ContractAST& ast,
                                                const DependenceFacts& facts,
                                                const FunctionDecl& f, const CallerContext& ctx,
                                                const LabeledState& l,
                                                const std::map<std::string, SymValue>& params,
                                                const EngineOptions& opts = {});

/// Canonical rendering of a state's latest transition for role-insensitive
/// comparison: scalar values, per-token mapping change records and
/// exec_state, with the executing sender renamed to msg.sender.
std::map<std::string, std::string> canonical_change_record(const ContractAST& ast,
                                                           const LabeledState& s);

} // namespace janus
