#include "pkb/store.hpp"

#include <cmath>

#include "pkb/errors.hpp"

namespace pkb {

PatternId KnowledgeStore::add_pattern(const std::vector<std::string>& names,
                                      const std::vector<bool>& marks,
                                      std::uint64_t frequency,
                                      const std::string& label) {
    if (sealed_) throw ValidationError("store is sealed; no further patterns can be added");
    if (names.empty()) throw ValidationError("pattern must contain at least one symbol");
    if (frequency < 1) throw ValidationError("pattern frequency must be >= 1");
    if (!marks.empty() && marks.size() != names.size()) {
        throw ValidationError("identification marks do not line up with symbols");
    }
    if (!label.empty() && labels_.count(label)) {
        throw ValidationError("duplicate pattern label '" + label + "'");
    }

    std::vector<Role> roles = resolve_roles(names, marks.empty()
                                                       ? std::vector<bool>(names.size(), false)
                                                       : marks);
    Pattern p;
    p.id = static_cast<PatternId>(patterns_.size());
    p.frequency = frequency;
    p.label = label;
    p.occs.reserve(names.size());
    for (std::size_t i = 0; i < names.size(); ++i) {
        p.occs.push_back({table_.intern(names[i]), roles[i]});
    }
    check_boundaries(p.occs, table_);

    total_mass_ += frequency * static_cast<std::uint64_t>(p.occs.size());
    if (!label.empty()) labels_.emplace(label, p.id);
    patterns_.push_back(std::move(p));
    return patterns_.back().id;
}

const CostModel& KnowledgeStore::seal_and_build_costs() {
    if (patterns_.empty()) throw ValidationError("cannot seal an empty store");
    if (sealed_) return costs_;

    costs_.counts_.assign(table_.size(), 0);
    for (const auto& p : patterns_) {
        for (const auto& o : p.occs) {
            costs_.counts_[static_cast<size_t>(o.sym)] += p.frequency;
        }
    }
    costs_.total_mass_ = total_mass_;
    costs_.costs_.resize(table_.size());
    for (std::size_t s = 0; s < table_.size(); ++s) {
        costs_.costs_[s] = -std::log2(static_cast<double>(costs_.counts_[s]) /
                                      static_cast<double>(total_mass_));
    }
    costs_.novel_cost_ = std::log2(static_cast<double>(total_mass_) + 1.0);
    sealed_ = true;
    return costs_;
}

const CostModel& KnowledgeStore::costs() const {
    if (!sealed_) throw ValidationError("store must be sealed before costs are available");
    return costs_;
}

PatternId KnowledgeStore::find_label(const std::string& label) const {
    auto it = labels_.find(label);
    return it == labels_.end() ? -1 : it->second;
}

}  // namespace pkb
