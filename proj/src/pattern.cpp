#include "pkb/pattern.hpp"

#include <algorithm>
#include <unordered_set>

#include "pkb/errors.hpp"

namespace pkb {

void check_boundaries(const std::vector<Occurrence>& occs, const SymbolTable& table) {
    std::unordered_set<SymbolId> present;
    present.reserve(occs.size());
    for (const auto& o : occs) present.insert(o.sym);

    // An occurrence takes part in the bracket check only when its twin is
    // also present somewhere in this pattern.
    std::vector<std::pair<SymbolId, std::size_t>> stack;  // (opener sym, index)
    for (std::size_t i = 0; i < occs.size(); ++i) {
        const std::string& nm = table.name(occs[i].sym);
        if (is_closing_name(nm)) {
            SymbolId opener = table.find(nm.substr(1));
            if (opener == kNoSymbol || !present.count(opener)) continue;
            if (stack.empty() || stack.back().first != opener) {
                throw ValidationError("boundary nesting violated at occurrence " +
                                      std::to_string(i) + " ('" + nm + "')");
            }
            stack.pop_back();
        } else {
            SymbolId closer = table.find("#" + nm);
            if (closer == kNoSymbol || !present.count(closer)) continue;
            stack.emplace_back(occs[i].sym, i);
        }
    }
    if (!stack.empty()) {
        throw ValidationError("unclosed boundary at occurrence " +
                              std::to_string(stack.back().second) + " ('" +
                              table.name(stack.back().first) + "')");
    }
}

std::vector<Role> resolve_roles(const std::vector<std::string>& names,
                                const std::vector<bool>& explicit_marks) {
    std::vector<Role> roles(names.size(), Role::Contents);
    bool any_mark = std::find(explicit_marks.begin(), explicit_marks.end(), true)
                    != explicit_marks.end();
    if (any_mark) {
        for (std::size_t i = 0; i < names.size(); ++i) {
            if (explicit_marks[i]) roles[i] = Role::Identification;
        }
        return roles;
    }
    roles.front() = Role::Identification;
    if (names.size() > 1 && names.back() == "#" + names.front()) {
        roles.back() = Role::Identification;
    }
    return roles;
}

}  // namespace pkb
