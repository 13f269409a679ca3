#include "pkb/symbols.hpp"

#include <cctype>

#include "pkb/errors.hpp"

namespace pkb {

SymbolId SymbolTable::intern(std::string_view name) {
    if (name.empty()) {
        throw FormatError("symbol name must be non-empty");
    }
    for (char c : name) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            throw FormatError("symbol name contains whitespace: '" + std::string(name) + "'");
        }
    }
    auto it = ids_.find(std::string(name));
    if (it != ids_.end()) {
        return it->second;
    }
    SymbolId id = static_cast<SymbolId>(names_.size());
    names_.emplace_back(name);
    ids_.emplace(names_.back(), id);
    return id;
}

SymbolId SymbolTable::find(std::string_view name) const {
    auto it = ids_.find(std::string(name));
    return it == ids_.end() ? kNoSymbol : it->second;
}

}  // namespace pkb
