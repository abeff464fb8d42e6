#pragma once

#include "janus/symval.hpp"

#include <map>
#include <string>
#include <vector>

namespace janus {

enum class SatResult { Sat, Unsat, Unknown };

/// Decision procedure for the engine's constraint fragment: boolean
/// combinations of address equalities/disequalities (union-find with
/// disequality edges), boolean symbols, and sign constraints over
/// normalized linear sums of non-negative atoms. Formulas outside the
/// fragment, or with too many atoms, come back Unknown and the engine
/// over-approximates (keeps both branches, flags the state approximate).
class Solver {
public:
    static constexpr std::size_t kMaxAtoms = 16;

    static SatResult check(const std::vector<SymValue>& conjuncts);

    /// True only when pc provably entails prop (unsat of pc ∧ ¬prop).
    static bool entails(const std::vector<SymValue>& pc, const SymValue& prop);

    /// Unit facts derivable from top-level conjuncts: numeric symbols forced
    /// to a single constant. Used to refine summary growth analysis.
    static std::map<std::string, std::int64_t> unit_bindings(
        const std::vector<SymValue>& conjuncts);
};

} // namespace janus
