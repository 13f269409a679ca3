#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pkb/symbols.hpp"

namespace pkb {

using PatternId = std::int32_t;

// Every symbol occurrence in a stored pattern is either part of the
// pattern's identification code or ordinary contents.
enum class Role : std::uint8_t { Identification, Contents };

struct Occurrence {
    SymbolId sym = kNoSymbol;
    Role role = Role::Contents;
};

// The single knowledge unit. Classes, instances, slot values and rules are
// all just patterns; nothing in the engine distinguishes them.
struct Pattern {
    PatternId id = -1;
    std::vector<Occurrence> occs;
    std::uint64_t frequency = 1;
    std::string label;  // empty = unlabeled

    std::size_t size() const { return occs.size(); }
};

// Checks boundary nesting: for every name x where both x and #x occur in
// the pattern, their occurrences must nest like brackets. Names with only
// one side present are references to other patterns and are left alone.
// Throws ValidationError naming the first offending occurrence index.
void check_boundaries(const std::vector<Occurrence>& occs, const SymbolTable& table);

// Resolves roles for a freshly parsed token sequence. If any explicit mark
// is present only marked occurrences are Identification; otherwise the
// first occurrence is, plus the last when its name is "#" + first name.
std::vector<Role> resolve_roles(const std::vector<std::string>& names,
                                const std::vector<bool>& explicit_marks);

}  // namespace pkb
