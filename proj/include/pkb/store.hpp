#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "pkb/pattern.hpp"
#include "pkb/symbols.hpp"

namespace pkb {

// Per-symbol bit costs derived from frequency-weighted occurrence counts:
//   cost(s) = -log2(f(s) / F)
// where f(s) sums pattern frequency times the symbol's occurrence count and
// F is the total frequency mass of the store. Symbols absent from the store
// are charged novel_cost = log2(F + 1) and can never be matched.
class CostModel {
public:
    double cost(SymbolId s) const { return costs_.at(static_cast<size_t>(s)); }
    double novel_cost() const { return novel_cost_; }
    std::uint64_t occurrence_count(SymbolId s) const { return counts_.at(static_cast<size_t>(s)); }
    std::uint64_t total_mass() const { return total_mass_; }

private:
    friend class KnowledgeStore;
    std::vector<double> costs_;
    std::vector<std::uint64_t> counts_;
    std::uint64_t total_mass_ = 0;
    double novel_cost_ = 0.0;
};

// The immutable repository of stored patterns plus the interning table.
// Mutable while loading; sealed once before any query runs.
class KnowledgeStore {
public:
    // Interns tokens, resolves roles (explicit marks win, fallback rule
    // otherwise), validates boundary nesting, and stores the pattern.
    // `marks` may be empty, meaning no explicit marks.
    PatternId add_pattern(const std::vector<std::string>& names,
                          const std::vector<bool>& marks,
                          std::uint64_t frequency,
                          const std::string& label);

    // Freezes the store and computes the cost model. Requires >= 1 pattern.
    const CostModel& seal_and_build_costs();

    bool sealed() const { return sealed_; }
    const CostModel& costs() const;

    const std::vector<Pattern>& patterns() const { return patterns_; }
    const Pattern& pattern(PatternId id) const { return patterns_.at(static_cast<size_t>(id)); }
    const SymbolTable& symbols() const { return table_; }
    SymbolTable& symbols_mut() { return table_; }

    std::uint64_t total_frequency_mass() const { return total_mass_; }

    // Pattern lookup by label; -1 when absent.
    PatternId find_label(const std::string& label) const;

private:
    SymbolTable table_;
    std::vector<Pattern> patterns_;
    std::unordered_map<std::string, PatternId> labels_;
    std::uint64_t total_mass_ = 0;
    bool sealed_ = false;
    CostModel costs_;
};

}  // namespace pkb
