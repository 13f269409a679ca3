#include "pkb/alignment.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

#include "pkb/errors.hpp"

namespace pkb {

std::size_t row_length(const MultiAlignment& a, const KnowledgeStore& store,
                       const NewPattern& np, int row) {
    if (a.rows[static_cast<size_t>(row)].is_new) return np.size();
    return store.pattern(a.rows[static_cast<size_t>(row)].pattern).size();
}

SymbolId occurrence_symbol(const MultiAlignment& a, const KnowledgeStore& store,
                           const NewPattern& np, int row, int pos) {
    const Row& r = a.rows[static_cast<size_t>(row)];
    if (r.is_new) return np.occs[static_cast<size_t>(pos)].sym;
    return store.pattern(r.pattern).occs[static_cast<size_t>(pos)].sym;
}

namespace {

// Lexicographic key used to break ties when several columns are ready in
// the topological sort; keeps column order deterministic.
bool column_less(const Column& x, const Column& y) {
    if (!(x.first == y.first)) return x.first < y.first;
    return x.second < y.second;
}

}  // namespace

std::optional<std::vector<int>> column_order(const MultiAlignment& a,
                                             const KnowledgeStore& store,
                                             const NewPattern& np) {
    const int n = static_cast<int>(a.columns.size());
    // Chains: for each row, its columned positions in ascending order give
    // direct precedence edges between columns.
    std::vector<std::vector<std::pair<int, int>>> per_row(a.rows.size());  // (pos, col)
    for (int c = 0; c < n; ++c) {
        per_row[static_cast<size_t>(a.columns[c].first.row)].push_back({a.columns[c].first.pos, c});
        per_row[static_cast<size_t>(a.columns[c].second.row)].push_back({a.columns[c].second.pos, c});
    }
    std::vector<std::vector<int>> succ(static_cast<size_t>(n));
    std::vector<int> indeg(static_cast<size_t>(n), 0);
    for (auto& chain : per_row) {
        std::sort(chain.begin(), chain.end());
        for (std::size_t i = 1; i < chain.size(); ++i) {
            succ[static_cast<size_t>(chain[i - 1].second)].push_back(chain[i].second);
            ++indeg[static_cast<size_t>(chain[i].second)];
        }
    }
    auto cmp = [&](int x, int y) { return column_less(a.columns[y], a.columns[x]); };
    std::priority_queue<int, std::vector<int>, decltype(cmp)> ready(cmp);
    for (int c = 0; c < n; ++c) {
        if (indeg[static_cast<size_t>(c)] == 0) ready.push(c);
    }
    std::vector<int> order;
    order.reserve(static_cast<size_t>(n));
    while (!ready.empty()) {
        int c = ready.top();
        ready.pop();
        order.push_back(c);
        for (int s : succ[static_cast<size_t>(c)]) {
            if (--indeg[static_cast<size_t>(s)] == 0) ready.push(s);
        }
    }
    if (static_cast<int>(order.size()) != n) return std::nullopt;  // crossing match lines
    (void)store;
    (void)np;
    return order;
}

std::optional<std::string> check_alignment(const MultiAlignment& a,
                                           const KnowledgeStore& store,
                                           const NewPattern& np) {
    if (a.rows.empty() || !a.rows[0].is_new) return "row 0 must be the New row";
    for (std::size_t r = 1; r < a.rows.size(); ++r) {
        if (a.rows[r].is_new) return "more than one New row";
        if (a.rows[r].pattern < 0 ||
            a.rows[r].pattern >= static_cast<PatternId>(store.patterns().size())) {
            return "row references unknown pattern";
        }
        if (a.rows[r].reuse_index < 1) return "old row reuse index must be >= 1";
    }
    if (a.rows.size() < 2) return "alignment needs at least one Old row";
    if (a.columns.empty()) return "alignment needs at least one column";

    std::set<std::pair<int, int>> used;
    for (const auto& c : a.columns) {
        for (const ColumnEntry& e : {c.first, c.second}) {
            if (e.row < 0 || e.row >= static_cast<int>(a.rows.size())) return "column row out of range";
            if (e.pos < 0 ||
                e.pos >= static_cast<int>(row_length(a, store, np, e.row))) {
                return "column position out of range";
            }
            if (!used.insert({e.row, e.pos}).second) {
                return "occurrence appears in more than one column";
            }
        }
        if (c.first.row == c.second.row) return "column entries must come from distinct rows";
        SymbolId s1 = occurrence_symbol(a, store, np, c.first.row, c.first.pos);
        SymbolId s2 = occurrence_symbol(a, store, np, c.second.row, c.second.pos);
        if (s1 == kNoSymbol || s2 == kNoSymbol) return "novel symbols cannot be matched";
        if (s1 != s2 || s1 != c.sym) return "column entries carry different symbols";
        const Row& r1 = a.rows[static_cast<size_t>(c.first.row)];
        const Row& r2 = a.rows[static_cast<size_t>(c.second.row)];
        if (!r1.is_new && !r2.is_new && r1.pattern == r2.pattern &&
            c.first.pos == c.second.pos) {
            return "reuse copies may not pair the same pattern position";
        }
        // A column must carry query content or resolve a reference: at
        // least one entry is New or an identification occurrence. Pure
        // contents-to-contents unification encodes nothing.
        auto is_id = [&](const ColumnEntry& e) {
            const Row& r = a.rows[static_cast<size_t>(e.row)];
            if (r.is_new) return true;
            return store.pattern(r.pattern).occs[static_cast<size_t>(e.pos)].role ==
                   Role::Identification;
        };
        if (!is_id(c.first) && !is_id(c.second)) {
            return "column pairs two contents occurrences of stored rows";
        }
    }

    // Reuse copies must align different parts of their pattern: no two
    // rows of one pattern may both place the same own position in columns.
    std::map<std::pair<PatternId, int>, int> position_owner;
    for (const auto& c : a.columns) {
        for (const ColumnEntry& e : {c.first, c.second}) {
            const Row& r = a.rows[static_cast<size_t>(e.row)];
            if (r.is_new) continue;
            auto [it, inserted] = position_owner.try_emplace({r.pattern, e.pos}, e.row);
            if (!inserted && it->second != e.row) {
                return "reuse copies both match the same pattern position";
            }
        }
    }

    if (!column_order(a, store, np)) return "no crossing-free column order exists";

    // Participation.
    std::vector<bool> in_col(a.rows.size(), false);
    for (const auto& c : a.columns) {
        in_col[static_cast<size_t>(c.first.row)] = true;
        in_col[static_cast<size_t>(c.second.row)] = true;
    }
    for (std::size_t r = 1; r < a.rows.size(); ++r) {
        if (!in_col[r]) return "old row takes part in no column";
    }

    // Connectivity through the column graph, starting at New.
    std::vector<std::vector<int>> adj(a.rows.size());
    for (const auto& c : a.columns) {
        adj[static_cast<size_t>(c.first.row)].push_back(c.second.row);
        adj[static_cast<size_t>(c.second.row)].push_back(c.first.row);
    }
    std::vector<bool> seen(a.rows.size(), false);
    std::vector<int> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
        int r = stack.back();
        stack.pop_back();
        for (int s : adj[static_cast<size_t>(r)]) {
            if (!seen[static_cast<size_t>(s)]) {
                seen[static_cast<size_t>(s)] = true;
                stack.push_back(s);
            }
        }
    }
    for (std::size_t r = 0; r < a.rows.size(); ++r) {
        if (!seen[r]) return "alignment is not connected";
    }
    return std::nullopt;
}

std::vector<int> coverage(const MultiAlignment& a) {
    std::vector<int> cov;
    for (const auto& c : a.columns) {
        if (c.first.row == 0) cov.push_back(c.first.pos);
        if (c.second.row == 0) cov.push_back(c.second.pos);
    }
    std::sort(cov.begin(), cov.end());
    return cov;
}

namespace {

std::string key_for_labels(const MultiAlignment& a, const std::vector<int>& copy_label) {
    auto entry_str = [&](const ColumnEntry& e) {
        std::ostringstream s;
        if (a.rows[static_cast<size_t>(e.row)].is_new) {
            s << "N:" << e.pos;
        } else {
            s << "P" << a.rows[static_cast<size_t>(e.row)].pattern << "_"
              << copy_label[static_cast<size_t>(e.row)] << ":" << e.pos;
        }
        return s.str();
    };
    std::vector<std::string> cols;
    cols.reserve(a.columns.size());
    for (const auto& c : a.columns) {
        std::string x = entry_str(c.first), y = entry_str(c.second);
        if (y < x) std::swap(x, y);
        cols.push_back(x + "|" + y);
    }
    std::sort(cols.begin(), cols.end());
    std::string out;
    for (const auto& s : cols) {
        out += s;
        out += ';';
    }
    return out;
}

}  // namespace

std::string canonical_key(const MultiAlignment& a) {
    // Row multiset prefix.
    std::vector<PatternId> pats;
    for (std::size_t r = 1; r < a.rows.size(); ++r) pats.push_back(a.rows[r].pattern);
    std::sort(pats.begin(), pats.end());
    std::ostringstream prefix;
    prefix << "R:";
    for (PatternId p : pats) prefix << p << ",";
    prefix << "#";

    // Copies of the same pattern are interchangeable labels; take the
    // lexicographically smallest serialization over label permutations.
    std::map<PatternId, std::vector<int>> groups;
    for (std::size_t r = 1; r < a.rows.size(); ++r) {
        groups[a.rows[r].pattern].push_back(static_cast<int>(r));
    }
    std::vector<int> copy_label(a.rows.size(), 0);
    std::uint64_t combos = 1;
    for (auto& [pid, rows] : groups) {
        (void)pid;
        std::uint64_t f = 1;
        for (std::size_t i = 2; i <= rows.size(); ++i) f *= i;
        combos *= f;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            copy_label[static_cast<size_t>(rows[i])] = static_cast<int>(i) + 1;
        }
    }
    if (combos == 1 || combos > 5040) {
        return prefix.str() + key_for_labels(a, copy_label);
    }

    std::string best;
    std::vector<const std::vector<int>*> multi;
    for (auto& [pid, rows] : groups) {
        (void)pid;
        if (rows.size() > 1) multi.push_back(&rows);
    }
    std::vector<std::vector<int>> perms(multi.size());
    for (std::size_t g = 0; g < multi.size(); ++g) {
        perms[g].resize(multi[g]->size());
        std::iota(perms[g].begin(), perms[g].end(), 1);
    }
    // Iterate the cartesian product of per-group permutations.
    std::function<void(std::size_t)> rec = [&](std::size_t g) {
        if (g == multi.size()) {
            std::string k = key_for_labels(a, copy_label);
            if (best.empty() || k < best) best = std::move(k);
            return;
        }
        std::vector<int>& perm = perms[g];
        std::sort(perm.begin(), perm.end());
        do {
            for (std::size_t i = 0; i < perm.size(); ++i) {
                copy_label[static_cast<size_t>((*multi[g])[i])] = perm[i];
            }
            rec(g + 1);
        } while (std::next_permutation(perm.begin(), perm.end()));
    };
    rec(0);
    return prefix.str() + best;
}

std::vector<int> report_row_order(const MultiAlignment& a, const KnowledgeStore& store,
                                  const NewPattern& np) {
    auto order = column_order(a, store, np);
    std::vector<int> col_rank(a.columns.size(), 0);
    if (order) {
        for (std::size_t i = 0; i < order->size(); ++i) {
            col_rank[static_cast<size_t>((*order)[i])] = static_cast<int>(i);
        }
    }
    std::vector<int> first_col(a.rows.size(), std::numeric_limits<int>::max());
    for (std::size_t c = 0; c < a.columns.size(); ++c) {
        for (const ColumnEntry& e : {a.columns[c].first, a.columns[c].second}) {
            first_col[static_cast<size_t>(e.row)] =
                std::min(first_col[static_cast<size_t>(e.row)], col_rank[c]);
        }
    }
    std::vector<int> rows;
    for (std::size_t r = 1; r < a.rows.size(); ++r) rows.push_back(static_cast<int>(r));
    std::sort(rows.begin(), rows.end(), [&](int x, int y) {
        if (first_col[static_cast<size_t>(x)] != first_col[static_cast<size_t>(y)]) {
            return first_col[static_cast<size_t>(x)] < first_col[static_cast<size_t>(y)];
        }
        const Row& rx = a.rows[static_cast<size_t>(x)];
        const Row& ry = a.rows[static_cast<size_t>(y)];
        if (rx.pattern != ry.pattern) return rx.pattern < ry.pattern;
        return rx.reuse_index < ry.reuse_index;
    });
    rows.insert(rows.begin(), 0);
    return rows;
}

Score score_alignment(const MultiAlignment& a, const KnowledgeStore& store,
                      const NewPattern& np, const CostModel& costs) {
    std::vector<std::vector<bool>> matched(a.rows.size());
    for (std::size_t r = 0; r < a.rows.size(); ++r) {
        matched[r].assign(row_length(a, store, np, static_cast<int>(r)), false);
    }
    for (const auto& c : a.columns) {
        matched[static_cast<size_t>(c.first.row)][static_cast<size_t>(c.first.pos)] = true;
        matched[static_cast<size_t>(c.second.row)][static_cast<size_t>(c.second.pos)] = true;
    }
    Score s;
    for (std::size_t p = 0; p < np.size(); ++p) {
        if (matched[0][p]) s.b_n += costs.cost(np.occs[p].sym);
    }
    for (std::size_t r = 1; r < a.rows.size(); ++r) {
        const Pattern& pat = store.pattern(a.rows[r].pattern);
        for (std::size_t p = 0; p < pat.size(); ++p) {
            if (pat.occs[p].role == Role::Identification && !matched[r][p]) {
                s.b_e += costs.cost(pat.occs[p].sym);
            }
        }
    }
    s.cd = s.b_n - s.b_e;
    return s;
}

// --- SlotView -----------------------------------------------------------

SlotView::SlotView(const MultiAlignment& a, const KnowledgeStore& store,
                   const NewPattern& np) {
    // Occurrence nodes, merged pairwise where a column unifies two of them.
    std::vector<std::size_t> row_offset(a.rows.size());
    std::size_t total = 0;
    for (std::size_t r = 0; r < a.rows.size(); ++r) {
        row_offset[r] = total;
        total += row_length(a, store, np, static_cast<int>(r));
    }
    std::vector<int> rep(total);
    std::iota(rep.begin(), rep.end(), 0);
    auto node_of = [&](int row, int pos) {
        return static_cast<int>(row_offset[static_cast<size_t>(row)]) + pos;
    };
    std::vector<bool> occupied(total, false);
    for (const auto& c : a.columns) {
        int n1 = node_of(c.first.row, c.first.pos);
        int n2 = node_of(c.second.row, c.second.pos);
        rep[static_cast<size_t>(std::max(n1, n2))] = std::min(n1, n2);
        occupied[static_cast<size_t>(n1)] = occupied[static_cast<size_t>(n2)] = true;
    }

    // Slots in row-major order of first appearance.
    std::vector<int> slot_of(total, -1);
    for (std::size_t r = 0; r < a.rows.size(); ++r) {
        std::size_t len = row_length(a, store, np, static_cast<int>(r));
        for (std::size_t p = 0; p < len; ++p) {
            int node = node_of(static_cast<int>(r), static_cast<int>(p));
            int rp = rep[static_cast<size_t>(node)];
            if (slot_of[static_cast<size_t>(rp)] >= 0) continue;
            Slot s;
            s.row = static_cast<int>(r);
            s.pos = static_cast<int>(p);
            s.sym = occurrence_symbol(a, store, np, s.row, s.pos);
            s.free = !occupied[static_cast<size_t>(node)];
            s.paying = a.rows[r].is_new ||
                       store.pattern(a.rows[r].pattern).occs[p].role == Role::Identification;
            slot_of[static_cast<size_t>(rp)] = static_cast<int>(slots_.size());
            slots_.push_back(s);
        }
    }
    auto slot_at = [&](int row, int pos) {
        return slot_of[static_cast<size_t>(rep[static_cast<size_t>(node_of(row, pos))])];
    };

    // Successor edges: each row is a chain through its slots.
    const std::size_t ns = slots_.size();
    std::vector<std::vector<int>> succ(ns);
    std::vector<int> indeg(ns, 0);
    for (std::size_t r = 0; r < a.rows.size(); ++r) {
        std::size_t len = row_length(a, store, np, static_cast<int>(r));
        for (std::size_t p = 0; p + 1 < len; ++p) {
            int u = slot_at(static_cast<int>(r), static_cast<int>(p));
            int v = slot_at(static_cast<int>(r), static_cast<int>(p) + 1);
            succ[static_cast<size_t>(u)].push_back(v);
            ++indeg[static_cast<size_t>(v)];
        }
    }

    // Reachability over the slot DAG, propagated in reverse topological
    // order with bitsets.
    std::vector<int> topo;
    topo.reserve(ns);
    {
        std::vector<int> q;
        for (std::size_t i = 0; i < ns; ++i) {
            if (indeg[i] == 0) q.push_back(static_cast<int>(i));
        }
        std::vector<int> deg = indeg;
        for (std::size_t h = 0; h < q.size(); ++h) {
            int u = q[h];
            topo.push_back(u);
            for (int v : succ[static_cast<size_t>(u)]) {
                if (--deg[static_cast<size_t>(v)] == 0) q.push_back(v);
            }
        }
        if (topo.size() != ns) {
            throw ValidationError("slot view requires a crossing-free alignment");
        }
    }
    const std::size_t words = (ns + 63) / 64;
    reach_.assign(ns, std::vector<std::uint64_t>(words, 0));
    for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
        int u = *it;
        for (int v : succ[static_cast<size_t>(u)]) {
            reach_[static_cast<size_t>(u)][static_cast<size_t>(v) / 64] |=
                (std::uint64_t{1} << (static_cast<size_t>(v) % 64));
            for (std::size_t w = 0; w < words; ++w) {
                reach_[static_cast<size_t>(u)][w] |= reach_[static_cast<size_t>(v)][w];
            }
        }
    }

    for (std::size_t i = 0; i < ns; ++i) {
        if (slots_[i].free && slots_[i].sym != kNoSymbol) {
            by_symbol_.resize(std::max(by_symbol_.size(),
                                       static_cast<std::size_t>(slots_[i].sym) + 1));
            by_symbol_[static_cast<size_t>(slots_[i].sym)].push_back(static_cast<int>(i));
        }
    }
}

bool SlotView::precedes(int from, int to) const {
    return (reach_[static_cast<size_t>(from)][static_cast<size_t>(to) / 64] >>
            (static_cast<size_t>(to) % 64)) & 1;
}

const std::vector<int>& SlotView::free_slots_with(SymbolId sym) const {
    if (sym == kNoSymbol || static_cast<std::size_t>(sym) >= by_symbol_.size()) return empty_;
    return by_symbol_[static_cast<size_t>(sym)];
}

}  // namespace pkb
