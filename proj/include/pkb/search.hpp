#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pkb/alignment.hpp"
#include "pkb/query.hpp"
#include "pkb/store.hpp"

namespace pkb {

struct SearchParams {
    int beam_width = 200;
    int max_rows = 20;
    int max_pattern_reuse = 3;
    int top_k_reported = 10;
    int max_iterations = 12;
    int threads = 1;

    void validate() const;
};

// One way of attaching a candidate pattern to a base: matched (slot,
// candidate position) pairs, strictly increasing in candidate position and
// never running against the base's partial order.
struct Hit {
    int slot = -1;      // index into the base SlotView
    int cand_pos = -1;
};

struct HitSequence {
    std::vector<Hit> hits;
    double score = 0.0;  // summed cost of the matched symbols
};

// Candidate ways of matching `candidate` against the free slots of `base`;
// at most beam_width sequences, best score first.
std::vector<HitSequence> pairwise_align(const SlotView& base,
                                        const MultiAlignment& base_alignment,
                                        const Pattern& candidate,
                                        const CostModel& costs,
                                        const SearchParams& params);

// Adds `candidate` as a fresh row, one new column per hit. Returns nullopt
// when the result breaks any alignment invariant or a row limit.
std::optional<MultiAlignment> extend_alignment(const MultiAlignment& base,
                                               const SlotView& view,
                                               const HitSequence& hits,
                                               const Pattern& candidate,
                                               const KnowledgeStore& store,
                                               const NewPattern& np,
                                               const SearchParams& params);

struct ScoredAlignment {
    MultiAlignment alignment;
    Score score;
    std::string key;
    std::vector<int> covered;     // matched New positions, sorted
    int distinct_patterns = 0;
};

// Full ranking order: cd first, then the deterministic structural
// tie-breaks. Returns true when x ranks before y.
bool ranks_before(const ScoredAlignment& x, const ScoredAlignment& y);

struct SearchResult {
    std::vector<ScoredAlignment> ranked;  // every retained alignment, best first
    int iterations = 0;

    // The reported slice: alignments with cd > 0, at most top_k of them.
    std::vector<const ScoredAlignment*> reported(int top_k) const;
};

// Iterative beam search: seeds New against every stored pattern, then
// repeatedly extends every beam member with every pattern until no new
// alignment appears or max_iterations is reached. Deterministic for fixed
// inputs and params, regardless of thread count.
SearchResult build_alignments(const KnowledgeStore& store, const CostModel& costs,
                              const NewPattern& np, const SearchParams& params);

}  // namespace pkb
