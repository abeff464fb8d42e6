#pragma once

#include "janus/facts.hpp"

#include <map>
#include <string>
#include <vector>

namespace janus {

enum class NodeKind { StateVar, LocalVar, FunctionStatement };
enum class EdgeKind { CFE, DFE, RFE, CDE, DDE, FCE };

inline const char* edge_kind_name(EdgeKind k) {
    switch (k) {
    case EdgeKind::CFE: return "CFE";
    case EdgeKind::DFE: return "DFE";
    case EdgeKind::RFE: return "RFE";
    case EdgeKind::CDE: return "CDE";
    case EdgeKind::DDE: return "DDE";
    case EdgeKind::FCE: return "FCE";
    }
    return "?";
}

struct VpgNode {
    NodeKind kind;
    std::string id;    // "sv:owner" | "lv:transfer._to" | "st:transfer#2"
    std::string label; // display text
};

struct VpgEdge {
    EdgeKind kind;
    std::string from;
    std::string to;
    bool operator<(const VpgEdge& o) const {
        if (kind != o.kind) return kind < o.kind;
        if (from != o.from) return from < o.from;
        return to < o.to;
    }
};

/// Heterogeneous variable property graph: state-variable, local-variable and
/// function-statement nodes connected by control-flow (CFE), data-flow (DFE),
/// reference-flow (RFE), control-dependency (CDE), data-dependency (DDE) and
/// function-call (FCE) edges.
struct VariablePropertyGraph {
    std::map<std::string, VpgNode> nodes;
    std::vector<VpgEdge> edges;

    std::size_t count_nodes(NodeKind k) const {
        std::size_t n = 0;
        for (const auto& [id, node] : nodes) n += node.kind == k ? 1 : 0;
        return n;
    }
    std::size_t count_edges(EdgeKind k) const {
        std::size_t n = 0;
        for (const auto& e : edges) n += e.kind == k ? 1 : 0;
        return n;
    }
    bool has_edge(EdgeKind k, const std::string& from, const std::string& to) const {
        for (const auto& e : edges)
            if (e.kind == k && e.from == from && e.to == to) return true;
        return false;
    }

    /// Structural typing invariants of the six edge kinds.
    bool well_formed(std::string* why = nullptr) const;
};

VariablePropertyGraph build_vpg(const ContractAST& ast, const DependenceFacts& facts);

} // namespace janus
