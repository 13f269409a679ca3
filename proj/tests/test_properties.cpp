#include <doctest.h>

#include <random>
#include <sstream>

#include "pkb/errors.hpp"
#include "pkb/format.hpp"
#include "pkb/report.hpp"

#include "helpers.hpp"

using namespace pkb;

namespace {

std::string scale_frequencies(const std::string& kb_text, int k) {
    std::istringstream in(kb_text);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::vector<std::string> toks;
        std::string tok;
        while (ls >> tok) toks.push_back(tok);
        if (toks.empty() || toks[0].rfind("//", 0) == 0) {
            out << line << "\n";
            continue;
        }
        std::size_t i = 0;
        std::ostringstream rec;
        if (toks[0].back() == ':') {
            rec << toks[0] << " ";
            i = 1;
        } else if (toks.size() > 1 && toks[1] == ":") {
            rec << toks[0] << " : ";
            i = 2;
        }
        long freq = 1;
        if (i + 1 < toks.size() && toks[i + 1] == "x" &&
            toks[i].find_first_not_of("0123456789") == std::string::npos) {
            freq = std::stol(toks[i]);
            i += 2;
        }
        rec << (freq * k) << " x";
        for (; i < toks.size(); ++i) rec << " " << toks[i];
        out << rec.str() << "\n";
    }
    return out.str();
}

// Structure of a reported alignment, blind to numeric fields.
std::string structure_of(const ScoredAlignment& s, const KnowledgeStore& store) {
    std::ostringstream out;
    for (std::size_t r = 1; r < s.alignment.rows.size(); ++r) {
        out << store.pattern(s.alignment.rows[r].pattern).label << ",";
    }
    out << "|" << s.alignment.columns.size() << "|";
    for (int c : s.covered) out << c << ",";
    return out.str();
}

}  // namespace

TEST_CASE("frequency scaling leaves scores, rankings and reports unchanged") {
    KnowledgeStore base = load_kb_text(test::kPeopleKb);
    KnowledgeStore scaled = load_kb_text(scale_frequencies(test::kPeopleKb, 7));

    for (std::size_t i = 0; i < base.symbols().size(); ++i) {
        CHECK(base.costs().cost(static_cast<SymbolId>(i)) ==
              scaled.costs().cost(static_cast<SymbolId>(i)));
    }

    NewPattern np1 = parse_new(base, test::kPeopleNew);
    NewPattern np2 = parse_new(scaled, test::kPeopleNew);
    QueryReport r1 = run_query("infer", base, np1, SearchParams{});
    QueryReport r2 = run_query("infer", scaled, np2, SearchParams{});
    CHECK(emit_report(r1, base, ReportFormat::Json) == emit_report(r2, scaled, ReportFormat::Json));
    CHECK(emit_report(r1, base, ReportFormat::Text) == emit_report(r2, scaled, ReportFormat::Text));
}

TEST_CASE("an unreachable pattern cannot reach the alignments") {
    // Adding any pattern shifts the total frequency mass, hence every cost;
    // what stays invariant is structure: the unrelated pattern never joins
    // an alignment, and the leading tie class keeps its shape and order.
    KnowledgeStore base = load_kb_text(test::kPeopleKb);
    KnowledgeStore padded =
        load_kb_text(std::string(test::kPeopleKb) + "unrelated: zulu omega #zulu ;\n");
    NewPattern np1 = parse_new(base, test::kPeopleNew);
    NewPattern np2 = parse_new(padded, test::kPeopleNew);
    SearchResult r1 = build_alignments(base, base.costs(), np1, SearchParams{});
    SearchResult r2 = build_alignments(padded, padded.costs(), np2, SearchParams{});
    REQUIRE(r1.ranked.size() == r2.ranked.size());
    for (const auto& s : r2.ranked) {
        for (std::size_t r = 1; r < s.alignment.rows.size(); ++r) {
            CHECK(padded.pattern(s.alignment.rows[r].pattern).label != "unrelated");
        }
    }
    auto leaders = [](const SearchResult& r) {
        std::size_t n = 0;
        while (n < r.ranked.size() && r.ranked[n].score.cd == r.ranked[0].score.cd) ++n;
        return n;
    };
    std::size_t n1 = leaders(r1), n2 = leaders(r2);
    REQUIRE(n1 == n2);
    for (std::size_t i = 0; i < n1; ++i) {
        CHECK(structure_of(r1.ranked[i], base) == structure_of(r2.ranked[i], padded));
    }
}

TEST_CASE("emitting the same report twice is byte-identical") {
    KnowledgeStore store = load_kb_text(test::kTweety);
    NewPattern np = parse_new(store, "Tweety bird");
    QueryReport rep = run_query("infer", store, np, SearchParams{});
    std::string a = emit_report(rep, store, ReportFormat::Json);
    std::string b = emit_report(rep, store, ReportFormat::Json);
    CHECK(a == b);
    CHECK(a.find("\"status\":\"ok\"") != std::string::npos);
}

TEST_CASE("monotone coverage: a valid extra column never lowers cd") {
    std::mt19937 rng(7);
    int checked = 0;
    for (int trial = 0; trial < 120 && checked < 40; ++trial) {
        test::RandomInstance inst = test::random_instance(rng);
        KnowledgeStore store;
        try {
            store = load_kb_text(inst.kb_text);
        } catch (const Error&) {
            continue;
        }
        NewPattern np = parse_new(store, inst.new_text);
        SearchParams p;
        p.beam_width = 32;
        SearchResult res = build_alignments(store, store.costs(), np, p);
        for (const auto& s : res.ranked) {
            const MultiAlignment& a = s.alignment;
            SlotView view(a, store, np);
            const auto& slots = view.slots();
            for (std::size_t i = 0; i < slots.size(); ++i) {
                for (std::size_t j = i + 1; j < slots.size(); ++j) {
                    if (!slots[i].free || !slots[j].free) continue;
                    if (slots[i].sym == kNoSymbol || slots[i].sym != slots[j].sym) continue;
                    if (slots[i].row == slots[j].row) continue;
                    MultiAlignment extended = a;
                    Column c;
                    c.sym = slots[i].sym;
                    c.first = {slots[i].row, slots[i].pos};
                    c.second = {slots[j].row, slots[j].pos};
                    if (c.second < c.first) std::swap(c.first, c.second);
                    extended.columns.push_back(c);
                    if (check_alignment(extended, store, np)) continue;
                    Score before = score_alignment(a, store, np, store.costs());
                    Score after = score_alignment(extended, store, np, store.costs());
                    CHECK(after.cd >= before.cd - 1e-12);
                    ++checked;
                }
            }
        }
    }
    CHECK(checked > 0);
}

TEST_CASE("validity sweep across random instances") {
    std::mt19937 rng(99);
    int alignments = 0;
    for (int trial = 0; trial < 80; ++trial) {
        test::RandomInstance inst = test::random_instance(rng);
        KnowledgeStore store;
        try {
            store = load_kb_text(inst.kb_text);
        } catch (const Error&) {
            continue;
        }
        NewPattern np = parse_new(store, inst.new_text);
        SearchParams p;
        p.beam_width = 32;
        SearchResult res = build_alignments(store, store.costs(), np, p);
        for (const auto& s : res.ranked) {
            auto reason = check_alignment(s.alignment, store, np);
            if (reason) FAIL(*reason);
            ++alignments;
        }
    }
    CHECK(alignments > 100);
}

TEST_CASE("probability scale invariance carries through inference") {
    KnowledgeStore base = load_kb_text(test::kTweety);
    KnowledgeStore scaled = load_kb_text(scale_frequencies(test::kTweety, 3));
    for (const char* q : {"Tweety bird", "Tweety penguin"}) {
        NewPattern np1 = parse_new(base, q);
        NewPattern np2 = parse_new(scaled, q);
        QueryReport r1 = run_query("infer", base, np1, SearchParams{});
        QueryReport r2 = run_query("infer", scaled, np2, SearchParams{});
        CHECK(emit_report(r1, base, ReportFormat::Json) ==
              emit_report(r2, scaled, ReportFormat::Json));
    }
}
