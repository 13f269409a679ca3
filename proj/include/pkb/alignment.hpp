#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pkb/query.hpp"
#include "pkb/store.hpp"

namespace pkb {

// One row of a multiple alignment. Row 0 is always the New row; the same
// Old pattern may appear as several rows, told apart by reuse_index.
struct Row {
    bool is_new = false;
    PatternId pattern = -1;
    int reuse_index = 0;  // >= 1 for Old rows
};

struct ColumnEntry {
    int row = -1;
    int pos = -1;

    friend bool operator<(const ColumnEntry& a, const ColumnEntry& b) {
        return a.row != b.row ? a.row < b.row : a.pos < b.pos;
    }
    friend bool operator==(const ColumnEntry& a, const ColumnEntry& b) {
        return a.row == b.row && a.pos == b.pos;
    }
};

// Columns are created pairwise: each one unifies exactly two occurrences
// of the same symbol from two distinct rows.
struct Column {
    SymbolId sym = kNoSymbol;
    ColumnEntry first, second;  // kept sorted, first < second
};

struct MultiAlignment {
    std::vector<Row> rows;        // rows[0] is New
    std::vector<Column> columns;

    std::size_t old_row_count() const { return rows.empty() ? 0 : rows.size() - 1; }
};

// Alignment scores. b_n prices the New occurrences that landed in columns;
// b_e prices the Old rows' identification occurrences that did not. An
// alignment compresses the query when cd = b_n - b_e is positive.
struct Score {
    double b_n = 0.0;
    double b_e = 0.0;
    double cd = 0.0;
};

// --- structural queries -----------------------------------------------

std::size_t row_length(const MultiAlignment& a, const KnowledgeStore& store,
                       const NewPattern& np, int row);

SymbolId occurrence_symbol(const MultiAlignment& a, const KnowledgeStore& store,
                           const NewPattern& np, int row, int pos);

// Left-to-right order of columns (indices into a.columns), or nullopt when
// the match lines cannot be drawn without crossing.
std::optional<std::vector<int>> column_order(const MultiAlignment& a,
                                             const KnowledgeStore& store,
                                             const NewPattern& np);

// The independent validity check used by tests, the search and the oracle:
// column identity and arity, one column per occurrence, no pairing of the
// same (pattern, position) across reuse copies, order preservation,
// participation of every Old row, and connectivity including the New row.
// Returns a reason string on failure, nullopt when valid.
std::optional<std::string> check_alignment(const MultiAlignment& a,
                                           const KnowledgeStore& store,
                                           const NewPattern& np);

// Sorted New positions that are matched in some column.
std::vector<int> coverage(const MultiAlignment& a);

// Structure key invariant under row insertion order and reuse relabeling;
// used to deduplicate alignments found along different search paths.
std::string canonical_key(const MultiAlignment& a);

// Reporting order: New first, then Old rows by (first column, pattern id,
// reuse index). Returns row indices.
std::vector<int> report_row_order(const MultiAlignment& a, const KnowledgeStore& store,
                                  const NewPattern& np);

Score score_alignment(const MultiAlignment& a, const KnowledgeStore& store,
                      const NewPattern& np, const CostModel& costs);

// --- slot view ----------------------------------------------------------
//
// An alignment seen as a partially ordered sequence of slots: every column
// is one occupied slot, every unmatched occurrence one free slot. Extending
// matches candidate symbols against free slots only; two slots with no path
// between them in the occurrence graph may be used in either order.
struct Slot {
    int row = -1;
    int pos = -1;
    SymbolId sym = kNoSymbol;  // kNoSymbol for novel New tokens
    bool free = true;
    bool paying = true;  // New occurrence or identification occurrence
};

class SlotView {
public:
    // Builds the view for an alignment, or for the bare New row when
    // `a` has no columns yet (the search seed).
    SlotView(const MultiAlignment& a, const KnowledgeStore& store, const NewPattern& np);

    const std::vector<Slot>& slots() const { return slots_; }

    // True when slot `from` must come strictly before slot `to`.
    bool precedes(int from, int to) const;

    // Free slot indices carrying store symbol `sym`.
    const std::vector<int>& free_slots_with(SymbolId sym) const;

private:
    std::vector<Slot> slots_;
    std::vector<std::vector<std::uint64_t>> reach_;  // reach_[i] bitset: i reaches j
    std::vector<std::vector<int>> by_symbol_;
    std::vector<int> empty_;
};

}  // namespace pkb
