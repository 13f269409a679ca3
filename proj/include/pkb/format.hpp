#pragma once

#include <iosfwd>
#include <string>

#include "pkb/query.hpp"
#include "pkb/store.hpp"

namespace pkb {

// Pattern file grammar, one record per line:
//
//   [<label> :] [<freq> x] sym1 sym2 ... symN ;
//
// Tokens are whitespace-separated. A leading '%' marks a token as an
// identification symbol (the '%' is not part of the name). '#'-prefixed
// tokens are ordinary symbols with closing-twin semantics. Lines starting
// with '//' are comments. Frequency defaults to 1.

// Parses and validates a whole file, then seals the store.
KnowledgeStore load_kb(const std::string& path);

// Same, from in-memory text. `origin` names the source in diagnostics.
KnowledgeStore load_kb_text(const std::string& text, const std::string& origin = "<string>");

// Splits whitespace-separated query tokens and flags novel ones.
// Throws UsageError on empty input.
NewPattern parse_new(const KnowledgeStore& store, const std::string& text);

// Canonical text form: every record with explicit label (when present),
// explicit frequency, and explicit '%' marks. parse(serialize(s)) == s.
std::string serialize_store(const KnowledgeStore& store);

}  // namespace pkb
