#pragma once

#include <string>
#include <vector>

#include "pkb/store.hpp"
#include "pkb/symbols.hpp"

namespace pkb {

// One token of the New pattern. Tokens absent from the store are flagged
// novel; they are priced at novel_cost and can never join a column.
struct NewOcc {
    SymbolId sym = kNoSymbol;  // store id, or kNoSymbol when novel
    std::string name;
    bool novel = false;
};

// The incoming query pattern. New carries no frequency.
struct NewPattern {
    std::vector<NewOcc> occs;

    std::size_t size() const { return occs.size(); }
};

}  // namespace pkb
