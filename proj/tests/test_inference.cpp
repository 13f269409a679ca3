#include <doctest.h>

#include <cmath>
#include <set>

#include "pkb/format.hpp"
#include "pkb/inference.hpp"
#include "pkb/report.hpp"

#include "helpers.hpp"

using namespace pkb;

namespace {

std::set<std::string> inferred_symbols(const MultiAlignment& a, const KnowledgeStore& store,
                                       const NewPattern& np) {
    std::set<std::string> out;
    for (const auto& run : extract_inferences(a, store, np)) {
        out.insert(run.symbols.begin(), run.symbols.end());
    }
    return out;
}

}  // namespace

TEST_CASE("the people alignment yields the classic inferences") {
    KnowledgeStore store = load_kb_text(test::kPeopleKb);
    NewPattern np = parse_new(store, test::kPeopleNew);
    SearchResult res = build_alignments(store, store.costs(), np, SearchParams{});
    REQUIRE(!res.ranked.empty());
    std::set<std::string> syms = inferred_symbols(res.ranked.front().alignment, store, np);
    for (const char* want : {"Jones", "doctor", "male", "beard", "deep"}) {
        CHECK_MESSAGE(syms.count(want), "missing inference: " << want);
    }
    // Identification symbols never show up as inferences.
    CHECK_FALSE(syms.count("jack1"));
    CHECK_FALSE(syms.count("#jack1"));
}

TEST_CASE("fully matched alignments infer nothing") {
    KnowledgeStore store = load_kb_text("p: X a #X ;\n");
    NewPattern np = parse_new(store, "X a #X");
    SearchResult res = build_alignments(store, store.costs(), np, SearchParams{});
    REQUIRE(!res.ranked.empty());
    CHECK(extract_inferences(res.ranked.front().alignment, store, np).empty());
}

TEST_CASE("inference context names the nearest enclosing matched pair") {
    KnowledgeStore store = load_kb_text(test::kTweety);
    NewPattern np = parse_new(store, "Tweety penguin");
    SearchResult res = build_alignments(store, store.costs(), np, SearchParams{});
    REQUIRE(!res.ranked.empty());
    // cannotfly sits inside the penguin pattern's matched bird ... #bird pair.
    bool found = false;
    for (const auto& run : extract_inferences(res.ranked.front().alignment, store, np)) {
        for (const auto& s : run.symbols) {
            if (s == "cannotfly") {
                found = true;
                REQUIRE(run.context.has_value());
                CHECK(run.context->first == "bird");
                CHECK(run.context->second == "#bird");
            }
        }
    }
    CHECK(found);
}

TEST_CASE("coverage grouping puts the wider, better-compressing group first") {
    KnowledgeStore store = load_kb_text("j1: Jack Dorking ;\nj2: Jack Putney ;\n");
    NewPattern np = parse_new(store, "Jack Dorking");
    QueryReport rep = run_query("infer", store, np, SearchParams{});
    REQUIRE(rep.groups.size() == 3);
    CHECK(rep.groups[0].covered == std::vector<int>{0, 1});  // both symbols matched
    CHECK(rep.groups[1].covered == std::vector<int>{1});     // Dorking, via the name link
    CHECK(rep.groups[2].covered == std::vector<int>{0});     // Jack alone, ambiguous
    CHECK(rep.groups[0].members.front()->score.cd >
          rep.groups[1].members.front()->score.cd);
    CHECK(rep.groups[1].members.front()->score.cd >
          rep.groups[2].members.front()->score.cd);
    CHECK(rep.groups[2].members.size() == 2);  // one per candidate pattern
    CHECK(group_by_coverage({}).empty());
}

TEST_CASE("relative probabilities: a one-bit gap splits two to one") {
    // Hand-built group: two members whose b_e differs by exactly one bit.
    ScoredAlignment a, b;
    a.score.b_e = 3.0;
    b.score.b_e = 4.0;
    CoverageGroup g;
    g.members = {&a, &b};
    auto p = relative_probabilities(g);
    CHECK(p[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
    CHECK(p[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-9));

    CoverageGroup single;
    single.members = {&a};
    CHECK(relative_probabilities(single)[0] == doctest::Approx(1.0).epsilon(1e-12));

    ScoredAlignment c;
    c.score.b_e = 3.0;
    CoverageGroup equal;
    equal.members = {&a, &c};
    auto pe = relative_probabilities(equal);
    CHECK(pe[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(pe[1] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("abduction: the more frequent cause is the more probable one") {
    KnowledgeStore store = load_kb_text(test::kCauses);
    NewPattern np = parse_new(store, "car engine silent wont-start");
    QueryReport rep = run_query("infer", store, np, SearchParams{});
    REQUIRE(!rep.groups.empty());
    const CoverageGroup& g = rep.groups.front();
    REQUIRE(g.p_inf.count("flat-battery"));
    REQUIRE(g.p_inf.count("no-fuel"));
    // The frequency ratio 8:2 puts the dangling codes exactly 4 bits apart.
    CHECK(g.p_inf.at("flat-battery") == doctest::Approx(16.0 / 17.0).epsilon(1e-9));
    CHECK(g.p_inf.at("no-fuel") == doctest::Approx(1.0 / 17.0).epsilon(1e-9));
    CHECK(g.p_inf.at("flat-battery") > g.p_inf.at("no-fuel"));
}

TEST_CASE("a symbol inferred by every member has probability one") {
    KnowledgeStore store = load_kb_text(test::kTweety);
    NewPattern np = parse_new(store, "Tweety penguin");
    QueryReport rep = run_query("infer", store, np, SearchParams{});
    REQUIRE(!rep.groups.empty());
    const CoverageGroup& g = rep.groups.front();
    REQUIRE(g.p_inf.count("cannotfly"));
    CHECK(g.p_inf.at("cannotfly") == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("recognition lists every matched row, cross-classified rows included") {
    KnowledgeStore store = load_kb_text("d: stethoscope doctor ;\nm: beard male ;\n");
    NewPattern np = parse_new(store, "stethoscope beard");
    QueryReport rep = run_query("recognize", store, np, SearchParams{});
    REQUIRE(!rep.recognition.empty());
    std::set<std::string> labels;
    for (const auto& r : rep.recognition) {
        labels.insert(r.label);
        CHECK(r.matched >= 1);
        CHECK(r.length == 2);
    }
    // Neither pattern references the other; both memberships are reported.
    CHECK(labels == std::set<std::string>{"d", "m"});
}

TEST_CASE("recognition of the people query covers all nine patterns") {
    KnowledgeStore store = load_kb_text(test::kPeopleKb);
    NewPattern np = parse_new(store, test::kPeopleNew);
    QueryReport rep = run_query("recognize", store, np, SearchParams{});
    CHECK(rep.recognition.size() == 9);
    std::set<std::string> labels;
    for (const auto& r : rep.recognition) labels.insert(r.label);
    CHECK(labels == std::set<std::string>{"blue", "doctor", "fair", "hair", "head", "jack1",
                                          "jackmale", "male", "person"});
}
