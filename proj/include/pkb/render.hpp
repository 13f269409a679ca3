#pragma once

#include <string>

#include "pkb/alignment.hpp"

namespace pkb {

// Fixed-width text rendering: one line per row, New first, matched
// occurrences sharing a character offset. Stable under repeated calls.
std::string render_alignment(const MultiAlignment& a, const KnowledgeStore& store,
                             const NewPattern& np);

}  // namespace pkb
