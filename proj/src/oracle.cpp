#include "pkb/oracle.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "pkb/errors.hpp"

namespace pkb {

namespace {

struct PairCandidate {
    ColumnEntry a, b;
    SymbolId sym;
};

class Enumerator {
public:
    Enumerator(const KnowledgeStore& store, const CostModel& costs, const NewPattern& np,
               const OracleLimits& limits)
        : store_(store), costs_(costs), np_(np), limits_(limits) {}

    OracleResult run(const SearchParams& params) {
        budget_ = limits_.node_budget;
        if (static_cast<int>(np_.size()) > limits_.max_pattern_length) {
            throw ValidationError("oracle refuses: New pattern longer than limit");
        }
        for (const Pattern& p : store_.patterns()) {
            if (static_cast<int>(p.size()) > limits_.max_pattern_length) {
                throw ValidationError("oracle refuses: stored pattern longer than limit");
            }
        }
        int max_old = limits_.max_total_rows - 1;
        std::vector<PatternId> multiset;
        enumerate_multisets(0, max_old, std::min(params.max_pattern_reuse, max_old), multiset);
        return std::move(result_);
    }

private:
    void enumerate_multisets(std::size_t from, int remaining, int reuse,
                             std::vector<PatternId>& multiset) {
        if (!multiset.empty()) evaluate(multiset);
        if (remaining == 0) return;
        for (std::size_t p = from; p < store_.patterns().size(); ++p) {
            int copies = static_cast<int>(
                std::count(multiset.begin(), multiset.end(), static_cast<PatternId>(p)));
            if (copies >= reuse) continue;
            multiset.push_back(static_cast<PatternId>(p));
            enumerate_multisets(p, remaining - 1, reuse, multiset);
            multiset.pop_back();
        }
    }

    void evaluate(const std::vector<PatternId>& multiset) {
        MultiAlignment base;
        base.rows.push_back({true, -1, 0});
        std::map<PatternId, int> counts;
        for (PatternId pid : multiset) {
            base.rows.push_back({false, pid, ++counts[pid]});
        }

        // Every cross-row pair of equal store symbols is a column candidate,
        // except identical (pattern, position) pairs across reuse copies.
        std::vector<PairCandidate> pairs;
        int nrows = static_cast<int>(base.rows.size());
        auto paying = [&](int row, int pos) {
            if (base.rows[static_cast<size_t>(row)].is_new) return true;
            return store_.pattern(base.rows[static_cast<size_t>(row)].pattern)
                       .occs[static_cast<size_t>(pos)]
                       .role == Role::Identification;
        };
        for (int r1 = 0; r1 < nrows; ++r1) {
            for (int r2 = r1 + 1; r2 < nrows; ++r2) {
                int len1 = static_cast<int>(row_length(base, store_, np_, r1));
                int len2 = static_cast<int>(row_length(base, store_, np_, r2));
                for (int p1 = 0; p1 < len1; ++p1) {
                    SymbolId s1 = occurrence_symbol(base, store_, np_, r1, p1);
                    if (s1 == kNoSymbol) continue;
                    for (int p2 = 0; p2 < len2; ++p2) {
                        if (occurrence_symbol(base, store_, np_, r2, p2) != s1) continue;
                        if (!base.rows[static_cast<size_t>(r1)].is_new &&
                            base.rows[static_cast<size_t>(r1)].pattern ==
                                base.rows[static_cast<size_t>(r2)].pattern &&
                            p1 == p2) {
                            continue;
                        }
                        if (!paying(r1, p1) && !paying(r2, p2)) continue;
                        pairs.push_back({{r1, p1}, {r2, p2}, s1});
                    }
                }
            }
        }
        if (static_cast<int>(pairs.size()) > limits_.max_match_pairs) {
            throw ValidationError("oracle refuses: too many match pairs (" +
                                  std::to_string(pairs.size()) + ")");
        }
        if (pairs.empty()) return;

        std::vector<std::vector<bool>> occupied(base.rows.size());
        for (std::size_t r = 0; r < base.rows.size(); ++r) {
            occupied[r].assign(row_length(base, store_, np_, static_cast<int>(r)), false);
        }
        std::vector<Column> chosen;
        dfs(base, pairs, 0, occupied, chosen);
    }

    void dfs(MultiAlignment& base, const std::vector<PairCandidate>& pairs, std::size_t i,
             std::vector<std::vector<bool>>& occupied, std::vector<Column>& chosen) {
        if (--budget_ <= 0) {
            throw ValidationError("oracle refuses: enumeration budget exhausted");
        }
        if (i == pairs.size()) {
            if (!chosen.empty()) consider(base, chosen);
            return;
        }
        // Exclude pairs[i].
        dfs(base, pairs, i + 1, occupied, chosen);
        // Include pairs[i] when both occurrences are still free.
        const PairCandidate& pc = pairs[i];
        auto oa = occupied[static_cast<size_t>(pc.a.row)][static_cast<size_t>(pc.a.pos)];
        auto ob = occupied[static_cast<size_t>(pc.b.row)][static_cast<size_t>(pc.b.pos)];
        if (oa || ob) return;
        oa = true;
        ob = true;
        chosen.push_back({pc.sym, pc.a, pc.b});
        dfs(base, pairs, i + 1, occupied, chosen);
        chosen.pop_back();
        oa = false;
        ob = false;
    }

    void consider(const MultiAlignment& base, const std::vector<Column>& chosen) {
        MultiAlignment a = base;
        a.columns = chosen;
        if (check_alignment(a, store_, np_)) return;
        Score s = score_alignment(a, store_, np_, costs_);
        ++result_.alignments_seen;
        if (!result_.found || s.cd > result_.best_cd) {
            result_.found = true;
            result_.best_cd = s.cd;
            result_.best.clear();
            keys_.clear();
        } else if (s.cd < result_.best_cd) {
            return;
        }
        ScoredAlignment sa;
        sa.score = s;
        sa.key = canonical_key(a);
        if (!keys_.insert(sa.key).second) return;
        sa.covered = coverage(a);
        std::set<PatternId> distinct;
        for (std::size_t r = 1; r < a.rows.size(); ++r) distinct.insert(a.rows[r].pattern);
        sa.distinct_patterns = static_cast<int>(distinct.size());
        sa.alignment = a;
        result_.best.push_back(std::move(sa));
        std::sort(result_.best.begin(), result_.best.end(), ranks_before);
    }

    const KnowledgeStore& store_;
    const CostModel& costs_;
    const NewPattern& np_;
    OracleLimits limits_;
    OracleResult result_;
    std::set<std::string> keys_;
    long long budget_ = 0;
};

}  // namespace

OracleResult brute_force_best(const KnowledgeStore& store, const CostModel& costs,
                              const NewPattern& np, const SearchParams& params,
                              const OracleLimits& limits) {
    Enumerator en(store, costs, np, limits);
    return en.run(params);
}

}  // namespace pkb
