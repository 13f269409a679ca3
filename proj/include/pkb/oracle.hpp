#pragma once

#include <vector>

#include "pkb/alignment.hpp"
#include "pkb/search.hpp"

namespace pkb {

// Hard caps that keep exhaustive enumeration finite. Instances outside the
// caps are refused with a ValidationError rather than silently truncated.
struct OracleLimits {
    int max_total_rows = 4;   // counting the New row
    int max_pattern_length = 8;
    int max_match_pairs = 26;
    long long node_budget = 20'000'000;
};

struct OracleResult {
    bool found = false;
    double best_cd = 0.0;
    // Every distinct alignment attaining best_cd, in ranking order.
    std::vector<ScoredAlignment> best;
    long long alignments_seen = 0;
};

// Exhaustively enumerates every row multiset and column set satisfying the
// alignment invariants and returns the true maximum cd. Test oracle only;
// refuses instances beyond `limits`.
OracleResult brute_force_best(const KnowledgeStore& store, const CostModel& costs,
                              const NewPattern& np, const SearchParams& params,
                              const OracleLimits& limits = {});

}  // namespace pkb
