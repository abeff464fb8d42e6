#pragma once

#include "janus/summary.hpp"

#include <chrono>
#include <optional>

namespace janus {

struct AnalyzeOptions {
    int max_rounds = 16;
    int max_paths = 64;
    double budget_secs = 10.0;
    bool log_convergence = false;
    bool trace = false;
    std::ostream* trace_out = nullptr;
    // theorem-harness mutations
    bool disable_label_propagation = false;
    bool drop_theta_from_delta = false;
};

/// One examined privileged/ordinary successor pair, kept for the theorem
/// harness: Def-2 branch variables versus the variables the computed delta
/// actually reported.
struct ExaminedPair {
    std::string function;
    int round = 0;
    std::set<std::string> branch_vars; // sigma differs canonically, or labeled
    std::set<std::string> delta_vars;  // entries of the computed delta (empty if none)
    bool differential = false;         // Def-2 condition c held
};

struct DiffRecord {
    Difference difference;
    std::vector<std::string> provenance; // function chain, first divergence last
    int round = 0;
    bool approximate = false;
};

struct RoundLog {
    int round = 0;
    int new_differences = 0;
    int executions = 0;
};

struct DifferenceSet {
    std::vector<DiffRecord> differences; // D, insertion-ordered, canonical-deduped
    int rounds = 0;
    int executions = 0; // labeled_symbolic_exec calls
    std::uint64_t lattice_bound = 0;
    bool budget_exceeded = false;
    std::set<std::string> privileged;
    std::vector<ExaminedPair> examined;
    std::vector<RoundLog> convergence_log;

    bool empty() const { return differences.empty(); }
    std::set<std::string> all_variables() const {
        std::set<std::string> out;
        for (const auto& d : differences)
            for (const auto& v : d.difference.variables()) out.insert(v);
        return out;
    }
};

/// Algorithm: initialize the difference set over every function from the
/// constructor state, then propagate along related functions from privileged
/// successors until no new summarized difference appears.
DifferenceSet analyze(const ContractAST& ast, const AnalyzeOptions& opts = {});
DifferenceSet analyze(const ContractAST& ast, const DependenceFacts& facts,
                      const AnalyzeOptions& opts);

} // namespace janus
