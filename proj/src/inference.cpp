#include "pkb/inference.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace pkb {

namespace {

std::string pattern_display(const KnowledgeStore& store, PatternId pid) {
    const Pattern& p = store.pattern(pid);
    if (!p.label.empty()) return p.label;
    return "p#" + std::to_string(pid);
}

}  // namespace

std::vector<InferenceRun> extract_inferences(const MultiAlignment& a,
                                             const KnowledgeStore& store,
                                             const NewPattern& np) {
    std::vector<std::vector<bool>> matched(a.rows.size());
    for (std::size_t r = 0; r < a.rows.size(); ++r) {
        matched[r].assign(row_length(a, store, np, static_cast<int>(r)), false);
    }
    for (const auto& c : a.columns) {
        matched[static_cast<size_t>(c.first.row)][static_cast<size_t>(c.first.pos)] = true;
        matched[static_cast<size_t>(c.second.row)][static_cast<size_t>(c.second.pos)] = true;
    }

    std::vector<InferenceRun> out;
    std::vector<int> rows = report_row_order(a, store, np);
    for (int r : rows) {
        if (a.rows[static_cast<size_t>(r)].is_new) continue;
        const Pattern& pat = store.pattern(a.rows[static_cast<size_t>(r)].pattern);
        std::size_t p = 0;
        while (p < pat.size()) {
            if (matched[static_cast<size_t>(r)][p]) {
                ++p;
                continue;
            }
            std::size_t start = p;
            while (p < pat.size() && !matched[static_cast<size_t>(r)][p]) ++p;
            // [start, p) is a maximal unmatched run.
            InferenceRun run;
            run.row = r;
            run.pattern = pat.id;
            run.label = pattern_display(store, pat.id);
            for (std::size_t i = start; i < p; ++i) {
                if (pat.occs[i].role == Role::Contents) {
                    run.symbols.push_back(store.symbols().name(pat.occs[i].sym));
                }
            }
            if (run.symbols.empty()) continue;

            // Nearest enclosing matched boundary pair, scanning left for a
            // matched opener whose matched twin lies right of the run.
            for (int l = static_cast<int>(start) - 1; l >= 0; --l) {
                if (!matched[static_cast<size_t>(r)][static_cast<size_t>(l)]) continue;
                const std::string& nm = store.symbols().name(pat.occs[static_cast<size_t>(l)].sym);
                if (is_closing_name(nm)) continue;
                SymbolId twin = store.symbols().find("#" + nm);
                if (twin == kNoSymbol) continue;
                bool closed = false;
                for (std::size_t rpos = p; rpos < pat.size(); ++rpos) {
                    if (pat.occs[rpos].sym == twin && matched[static_cast<size_t>(r)][rpos]) {
                        closed = true;
                        break;
                    }
                }
                if (closed) {
                    run.context = {nm, "#" + nm};
                    break;
                }
            }
            out.push_back(std::move(run));
        }
    }
    return out;
}

std::vector<CoverageGroup> group_by_coverage(
    const std::vector<const ScoredAlignment*>& ranked) {
    std::vector<CoverageGroup> groups;
    for (const ScoredAlignment* s : ranked) {
        CoverageGroup* g = nullptr;
        for (auto& cand : groups) {
            if (cand.covered == s->covered) {
                g = &cand;
                break;
            }
        }
        if (!g) {
            groups.push_back({});
            groups.back().covered = s->covered;
            g = &groups.back();
        }
        g->members.push_back(s);
    }
    // Members arrive ranking-best first already; order groups by their best
    // member's cd, larger coverage then position list breaking ties. The cd
    // comparison carries a small tolerance: structurally tied groups can
    // differ by rounding of the same bit totals.
    std::stable_sort(groups.begin(), groups.end(), [](const CoverageGroup& x, const CoverageGroup& y) {
        double cx = x.members.front()->score.cd;
        double cy = y.members.front()->score.cd;
        if (std::abs(cx - cy) > 1e-9) return cx > cy;
        if (x.covered.size() != y.covered.size()) return x.covered.size() > y.covered.size();
        return x.covered < y.covered;
    });
    return groups;
}

std::vector<double> relative_probabilities(const CoverageGroup& g) {
    // Normalized 2^-b_e; subtracting the minimum exponent keeps the
    // arithmetic well away from underflow.
    double min_be = g.members.front()->score.b_e;
    for (const ScoredAlignment* m : g.members) min_be = std::min(min_be, m->score.b_e);
    std::vector<double> w;
    w.reserve(g.members.size());
    double total = 0.0;
    for (const ScoredAlignment* m : g.members) {
        double v = std::exp2(-(m->score.b_e - min_be));
        w.push_back(v);
        total += v;
    }
    for (double& v : w) v /= total;
    return w;
}

std::map<std::string, double> inference_probability(
    const CoverageGroup& g, const std::vector<double>& p_rel,
    const KnowledgeStore& store, const NewPattern& np) {
    std::map<std::string, double> p_inf;
    for (std::size_t i = 0; i < g.members.size(); ++i) {
        std::set<std::string> symbols;
        for (const InferenceRun& run :
             extract_inferences(g.members[i]->alignment, store, np)) {
            symbols.insert(run.symbols.begin(), run.symbols.end());
        }
        for (const std::string& s : symbols) p_inf[s] += p_rel[i];
    }
    return p_inf;
}

std::vector<CoverageGroup> analyze_coverage(
    const std::vector<const ScoredAlignment*>& ranked,
    const KnowledgeStore& store, const NewPattern& np) {
    std::vector<CoverageGroup> groups = group_by_coverage(ranked);
    for (auto& g : groups) {
        g.p_rel = relative_probabilities(g);
        g.p_inf = inference_probability(g, g.p_rel, store, np);
    }
    return groups;
}

std::vector<Recognition> recognize(const MultiAlignment& a, const KnowledgeStore& store,
                                   const NewPattern& np) {
    std::vector<std::vector<bool>> matched(a.rows.size());
    for (std::size_t r = 0; r < a.rows.size(); ++r) {
        matched[r].assign(row_length(a, store, np, static_cast<int>(r)), false);
    }
    for (const auto& c : a.columns) {
        matched[static_cast<size_t>(c.first.row)][static_cast<size_t>(c.first.pos)] = true;
        matched[static_cast<size_t>(c.second.row)][static_cast<size_t>(c.second.pos)] = true;
    }
    std::vector<Recognition> out;
    for (int r : report_row_order(a, store, np)) {
        if (a.rows[static_cast<size_t>(r)].is_new) continue;
        Recognition rec;
        rec.pattern = a.rows[static_cast<size_t>(r)].pattern;
        rec.reuse_index = a.rows[static_cast<size_t>(r)].reuse_index;
        rec.label = pattern_display(store, rec.pattern);
        rec.length = static_cast<int>(store.pattern(rec.pattern).size());
        rec.matched = static_cast<int>(
            std::count(matched[static_cast<size_t>(r)].begin(),
                       matched[static_cast<size_t>(r)].end(), true));
        out.push_back(std::move(rec));
    }
    return out;
}

}  // namespace pkb
