#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pkb/alignment.hpp"
#include "pkb/search.hpp"

namespace pkb {

// A maximal contiguous run of unmatched Old-row occurrences: something the
// alignment asserts about the queried entity. Identification occurrences
// are bookkeeping and are dropped from the listed symbols; a run that was
// all identification symbols is dropped entirely.
struct InferenceRun {
    int row = -1;
    PatternId pattern = -1;
    std::string label;
    std::vector<std::string> symbols;                        // contents only
    std::optional<std::pair<std::string, std::string>> context;  // enclosing matched pair
};

std::vector<InferenceRun> extract_inferences(const MultiAlignment& a,
                                             const KnowledgeStore& store,
                                             const NewPattern& np);

// Alignments that match exactly the same New positions, with their
// relative probabilities p_rel(A) = 2^-b_e(A) normalized over the group.
struct CoverageGroup {
    std::vector<int> covered;                    // sorted New positions
    std::vector<const ScoredAlignment*> members; // cd-descending
    std::vector<double> p_rel;
    std::map<std::string, double> p_inf;         // per inferred symbol name
};

// Partitions reported alignments by matched New position set; groups are
// ordered by their best member's cd (larger coverage wins ties).
std::vector<CoverageGroup> group_by_coverage(
    const std::vector<const ScoredAlignment*>& ranked);

std::vector<double> relative_probabilities(const CoverageGroup& g);

std::map<std::string, double> inference_probability(
    const CoverageGroup& g, const std::vector<double>& p_rel,
    const KnowledgeStore& store, const NewPattern& np);

// Convenience: groups with probabilities filled in.
std::vector<CoverageGroup> analyze_coverage(
    const std::vector<const ScoredAlignment*>& ranked,
    const KnowledgeStore& store, const NewPattern& np);

// Class/instance membership readout for one alignment: every Old row with
// its label, matched occurrence count and total length, in reading order.
struct Recognition {
    PatternId pattern = -1;
    int reuse_index = 1;
    std::string label;
    int matched = 0;
    int length = 0;
};

std::vector<Recognition> recognize(const MultiAlignment& a, const KnowledgeStore& store,
                                   const NewPattern& np);

}  // namespace pkb
