#include "pkb/search.hpp"

#include <algorithm>
#include <future>
#include <set>
#include <unordered_set>

#include "pkb/errors.hpp"

namespace pkb {

void SearchParams::validate() const {
    if (beam_width < 1 || max_rows < 1 || max_pattern_reuse < 1 || top_k_reported < 1 ||
        max_iterations < 1 || threads < 1) {
        throw UsageError("all search parameters must be positive");
    }
}

namespace {

struct Match {
    int slot;
    int cand_pos;
    double cost;
};

// Enumerates increasing hit sequences over the match list with exact
// branch-and-bound pruning against the current k-th best score.
class HitEnumerator {
public:
    HitEnumerator(const SlotView& view, std::vector<Match> matches, std::size_t keep)
        : view_(view), matches_(std::move(matches)), keep_(keep) {
        // Upper bound for a branch: the best still-reachable total is the
        // suffix sum of the highest cost per candidate position.
        suffix_bound_.assign(matches_.size() + 1, 0.0);
        for (std::size_t i = matches_.size(); i-- > 0;) {
            double here = matches_[i].cost;
            // Matches are sorted by candidate position; same positions are
            // mutually exclusive, so only count each position once.
            double skip = suffix_bound_[i + 1];
            double take = here;
            std::size_t j = i + 1;
            while (j < matches_.size() && matches_[j].cand_pos == matches_[i].cand_pos) ++j;
            take += suffix_bound_[j];
            suffix_bound_[i] = std::max(skip, take);
        }
    }

    std::vector<HitSequence> run() {
        chosen_.clear();
        score_ = 0.0;
        dfs(0);
        std::sort(results_.begin(), results_.end(), [](const HitSequence& a, const HitSequence& b) {
            if (a.score != b.score) return a.score > b.score;
            return lex_less(a, b);
        });
        if (results_.size() > keep_) results_.resize(keep_);
        return std::move(results_);
    }

private:
    static bool lex_less(const HitSequence& a, const HitSequence& b) {
        for (std::size_t i = 0; i < std::min(a.hits.size(), b.hits.size()); ++i) {
            if (a.hits[i].cand_pos != b.hits[i].cand_pos) {
                return a.hits[i].cand_pos < b.hits[i].cand_pos;
            }
            if (a.hits[i].slot != b.hits[i].slot) return a.hits[i].slot < b.hits[i].slot;
        }
        return a.hits.size() < b.hits.size();
    }

    double kth_score() const {
        if (results_.size() < keep_) return -1.0;
        return worst_kept_;
    }

    void record() {
        HitSequence seq;
        seq.hits.reserve(chosen_.size());
        for (std::size_t m : chosen_) {
            seq.hits.push_back({matches_[m].slot, matches_[m].cand_pos});
        }
        seq.score = score_;
        results_.push_back(std::move(seq));
        if (results_.size() >= keep_ * 4) {
            // Compact: keep the best `keep_` (ties included up to 2x).
            std::sort(results_.begin(), results_.end(),
                      [](const HitSequence& a, const HitSequence& b) {
                          if (a.score != b.score) return a.score > b.score;
                          return lex_less(a, b);
                      });
            results_.resize(keep_ * 2);
        }
        if (results_.size() >= keep_) {
            double w = results_[0].score;
            for (const auto& r : results_) w = std::min(w, r.score);
            worst_kept_ = w;
        }
    }

    void dfs(std::size_t from) {
        if (budget_-- <= 0) return;
        for (std::size_t m = from; m < matches_.size(); ++m) {
            if (!chosen_.empty()) {
                std::size_t last = chosen_.back();
                if (matches_[m].cand_pos <= matches_[last].cand_pos) continue;
            }
            if (score_ + suffix_bound_[m] < kth_score()) break;  // bound is monotone here
            bool ok = true;
            for (std::size_t c : chosen_) {
                if (matches_[c].slot == matches_[m].slot ||
                    view_.precedes(matches_[m].slot, matches_[c].slot)) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            chosen_.push_back(m);
            score_ += matches_[m].cost;
            record();
            dfs(m + 1);
            score_ -= matches_[m].cost;
            chosen_.pop_back();
        }
    }

    const SlotView& view_;
    std::vector<Match> matches_;
    std::size_t keep_;
    std::vector<double> suffix_bound_;
    std::vector<std::size_t> chosen_;
    double score_ = 0.0;
    double worst_kept_ = -1.0;
    std::vector<HitSequence> results_;
    long long budget_ = 2'000'000;
};

}  // namespace

std::vector<HitSequence> pairwise_align(const SlotView& base,
                                        const MultiAlignment& base_alignment,
                                        const Pattern& candidate,
                                        const CostModel& costs,
                                        const SearchParams& params) {
    // Positions of this pattern already columned in some existing copy;
    // a new copy may not match them again.
    std::set<int> taken_positions;
    for (const auto& c : base_alignment.columns) {
        for (const ColumnEntry& e : {c.first, c.second}) {
            const Row& row = base_alignment.rows[static_cast<size_t>(e.row)];
            if (!row.is_new && row.pattern == candidate.id) taken_positions.insert(e.pos);
        }
    }
    std::vector<Match> matches;
    for (int j = 0; j < static_cast<int>(candidate.size()); ++j) {
        SymbolId sym = candidate.occs[static_cast<size_t>(j)].sym;
        bool cand_id = candidate.occs[static_cast<size_t>(j)].role == Role::Identification;
        if (taken_positions.count(j)) continue;
        for (int s : base.free_slots_with(sym)) {
            const Slot& slot = base.slots()[static_cast<size_t>(s)];
            const Row& row = base_alignment.rows[static_cast<size_t>(slot.row)];
            // Reuse copies of a pattern never pair the same position.
            if (!row.is_new && row.pattern == candidate.id && slot.pos == j) continue;
            // At least one side must be New or an identification symbol.
            if (!slot.paying && !cand_id) continue;
            matches.push_back({s, j, costs.cost(sym)});
        }
    }
    if (matches.empty()) return {};
    std::sort(matches.begin(), matches.end(), [](const Match& a, const Match& b) {
        if (a.cand_pos != b.cand_pos) return a.cand_pos < b.cand_pos;
        return a.slot < b.slot;
    });
    HitEnumerator en(base, std::move(matches), static_cast<std::size_t>(params.beam_width));
    return en.run();
}

std::optional<MultiAlignment> extend_alignment(const MultiAlignment& base,
                                               const SlotView& view,
                                               const HitSequence& hits,
                                               const Pattern& candidate,
                                               const KnowledgeStore& store,
                                               const NewPattern& np,
                                               const SearchParams& params) {
    if (hits.hits.empty()) return std::nullopt;
    if (static_cast<int>(base.rows.size()) + 1 > params.max_rows) return std::nullopt;
    int reuse = 1;
    for (const Row& r : base.rows) {
        if (!r.is_new && r.pattern == candidate.id) ++reuse;
    }
    if (reuse > params.max_pattern_reuse) return std::nullopt;

    MultiAlignment next = base;
    int new_row = static_cast<int>(next.rows.size());
    next.rows.push_back({false, candidate.id, reuse});
    for (const Hit& h : hits.hits) {
        const Slot& slot = view.slots()[static_cast<size_t>(h.slot)];
        Column c;
        c.sym = candidate.occs[static_cast<size_t>(h.cand_pos)].sym;
        c.first = {slot.row, slot.pos};
        c.second = {new_row, h.cand_pos};
        if (c.second < c.first) std::swap(c.first, c.second);
        next.columns.push_back(c);
    }
    if (check_alignment(next, store, np)) return std::nullopt;  // reason means invalid
    return next;
}

bool ranks_before(const ScoredAlignment& x, const ScoredAlignment& y) {
    if (x.score.cd != y.score.cd) return x.score.cd > y.score.cd;
    if (x.distinct_patterns != y.distinct_patterns) {
        return x.distinct_patterns > y.distinct_patterns;
    }
    if (x.alignment.rows.size() != y.alignment.rows.size()) {
        return x.alignment.rows.size() < y.alignment.rows.size();
    }
    auto pattern_list = [](const ScoredAlignment& s) {
        std::vector<PatternId> v;
        for (std::size_t r = 1; r < s.alignment.rows.size(); ++r) {
            v.push_back(s.alignment.rows[r].pattern);
        }
        std::sort(v.begin(), v.end());
        return v;
    };
    std::vector<PatternId> px = pattern_list(x), py = pattern_list(y);
    if (px != py) return px < py;
    if (x.alignment.columns.size() != y.alignment.columns.size()) {
        return x.alignment.columns.size() < y.alignment.columns.size();
    }
    return x.key < y.key;
}

std::vector<const ScoredAlignment*> SearchResult::reported(int top_k) const {
    std::vector<const ScoredAlignment*> out;
    for (const auto& s : ranked) {
        if (s.score.cd > 0.0 && static_cast<int>(out.size()) < top_k) {
            out.push_back(&s);
        }
    }
    return out;
}

namespace {

ScoredAlignment make_scored(MultiAlignment a, const KnowledgeStore& store,
                            const NewPattern& np, const CostModel& costs) {
    ScoredAlignment s;
    s.score = score_alignment(a, store, np, costs);
    s.key = canonical_key(a);
    s.covered = coverage(a);
    std::set<PatternId> distinct;
    for (std::size_t r = 1; r < a.rows.size(); ++r) distinct.insert(a.rows[r].pattern);
    s.distinct_patterns = static_cast<int>(distinct.size());
    s.alignment = std::move(a);
    return s;
}

// All extensions of one alignment against every stored pattern, in
// deterministic order.
std::vector<ScoredAlignment> extensions_of(const MultiAlignment& base,
                                           const KnowledgeStore& store,
                                           const CostModel& costs,
                                           const NewPattern& np,
                                           const SearchParams& params) {
    std::vector<ScoredAlignment> out;
    SlotView view(base, store, np);
    for (const Pattern& cand : store.patterns()) {
        for (const HitSequence& seq : pairwise_align(view, base, cand, costs, params)) {
            auto next = extend_alignment(base, view, seq, cand, store, np, params);
            if (next) out.push_back(make_scored(std::move(*next), store, np, costs));
        }
    }
    return out;
}

}  // namespace

SearchResult build_alignments(const KnowledgeStore& store, const CostModel& costs,
                              const NewPattern& np, const SearchParams& params) {
    params.validate();
    if (!store.sealed()) throw ValidationError("store must be sealed before searching");
    if (np.occs.empty()) throw UsageError("query pattern is empty");

    SearchResult result;

    // Iteration 0: the bare New row against every pattern.
    MultiAlignment seed;
    seed.rows.push_back({true, -1, 0});
    std::vector<ScoredAlignment> pool = extensions_of(seed, store, costs, np, params);

    std::unordered_set<std::string> seen;
    std::unordered_set<std::string> extended;
    {
        std::vector<ScoredAlignment> unique;
        for (auto& s : pool) {
            if (seen.insert(s.key).second) unique.push_back(std::move(s));
        }
        pool = std::move(unique);
    }

    for (int iter = 1; iter <= params.max_iterations; ++iter) {
        std::sort(pool.begin(), pool.end(), ranks_before);
        if (static_cast<int>(pool.size()) > params.beam_width) {
            pool.resize(static_cast<size_t>(params.beam_width));
        }
        std::vector<const ScoredAlignment*> frontier;
        for (const auto& s : pool) {
            if (!extended.count(s.key)) frontier.push_back(&s);
        }
        if (frontier.empty()) break;
        result.iterations = iter;

        // Frontier members expand independently; futures are joined in
        // task order so thread count never changes the outcome.
        std::vector<std::vector<ScoredAlignment>> batches(frontier.size());
        std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(params.threads),
                                                    frontier.size());
        if (workers > 1) {
            std::vector<std::future<void>> futures;
            futures.reserve(workers);
            for (std::size_t t = 0; t < workers; ++t) {
                futures.push_back(std::async(std::launch::async, [&, t] {
                    for (std::size_t i = t; i < frontier.size(); i += workers) {
                        batches[i] = extensions_of(frontier[i]->alignment, store, costs, np, params);
                    }
                }));
            }
            for (auto& f : futures) f.get();
        } else {
            for (std::size_t i = 0; i < frontier.size(); ++i) {
                batches[i] = extensions_of(frontier[i]->alignment, store, costs, np, params);
            }
        }
        for (const ScoredAlignment* m : frontier) extended.insert(m->key);

        std::size_t added = 0;
        for (auto& batch : batches) {
            for (auto& s : batch) {
                if (seen.insert(s.key).second) {
                    pool.push_back(std::move(s));
                    ++added;
                }
            }
        }
        if (added == 0) break;
    }

    std::sort(pool.begin(), pool.end(), ranks_before);
    result.ranked = std::move(pool);
    return result;
}

}  // namespace pkb
