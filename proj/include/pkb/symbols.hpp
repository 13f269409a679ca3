#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace pkb {

// Dense handle for an interned symbol name. Matching everywhere in the
// engine is plain id equality: names match exactly or not at all.
using SymbolId = std::int32_t;

constexpr SymbolId kNoSymbol = -1;

// Interning table. Ids are assigned in first-seen order, so two builds of
// the same input produce identical ids.
class SymbolTable {
public:
    // Returns the existing id for `name` or assigns the next free one.
    // Throws FormatError for empty names or names containing whitespace.
    SymbolId intern(std::string_view name);

    // Lookup without interning; kNoSymbol if absent.
    SymbolId find(std::string_view name) const;

    const std::string& name(SymbolId id) const { return names_.at(static_cast<size_t>(id)); }
    std::size_t size() const { return names_.size(); }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, SymbolId> ids_;
};

// True if `name` is a closing boundary token (leading '#').
inline bool is_closing_name(std::string_view name) {
    return name.size() > 1 && name.front() == '#';
}

}  // namespace pkb
