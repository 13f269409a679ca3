#include <doctest.h>

#include <cmath>
#include <map>
#include <sstream>

#include "pkb/errors.hpp"
#include "pkb/format.hpp"
#include "pkb/store.hpp"

#include "helpers.hpp"

using namespace pkb;

TEST_CASE("interning is idempotent and injective") {
    SymbolTable t;
    SymbolId a = t.intern("Jack");
    CHECK(t.intern("Jack") == a);
    CHECK(t.intern("gender") != t.intern("#gender"));
    CHECK(t.name(a) == "Jack");
    CHECK_THROWS_AS(t.intern(""), FormatError);
    CHECK_THROWS_AS(t.intern("two words"), FormatError);
}

TEST_CASE("interned symbol locates a pattern in the people ontology") {
    KnowledgeStore store = load_kb_text(test::kPeopleKb);
    SymbolId fair = store.symbols().find("fair-hair");
    REQUIRE(fair != kNoSymbol);
    bool found = false;
    for (const auto& p : store.patterns()) {
        for (const auto& o : p.occs) {
            if (o.sym == fair) found = true;
        }
    }
    CHECK(found);
}

TEST_CASE("add_pattern resolves roles and validates boundaries") {
    KnowledgeStore store;
    PatternId id = store.add_pattern({"hcolour", "fair-hair", "#hcolour"}, {}, 1, "fair");
    const Pattern& p = store.pattern(id);
    CHECK(p.size() == 3);
    CHECK(p.occs[0].role == Role::Identification);
    CHECK(p.occs[1].role == Role::Contents);
    CHECK(p.occs[2].role == Role::Identification);  // closing twin of the first

    PatternId single = store.add_pattern({"a"}, {}, 1, "");
    CHECK(store.pattern(single).occs[0].role == Role::Identification);

    CHECK_THROWS_AS(store.add_pattern({"x", "#y", "y", "#x"}, {}, 1, ""), ValidationError);
    CHECK_THROWS_AS(store.add_pattern({}, {}, 1, ""), ValidationError);
    CHECK_THROWS_AS(store.add_pattern({"a"}, {}, 0, ""), ValidationError);
}

TEST_CASE("unpaired boundary symbols are references, not errors") {
    KnowledgeStore store;
    // 'hair ... #hair' inside another pattern references the hair pattern.
    CHECK_NOTHROW(store.add_pattern({"head", "hair", "#hair", "#head"}, {}, 1, ""));
    CHECK_NOTHROW(store.add_pattern({"#name", "Smith"}, {}, 1, ""));
    // Nested reuse of one boundary name is fine, crossing is not.
    CHECK_NOTHROW(store.add_pattern({"x", "x", "#x", "#x"}, {}, 1, ""));
    CHECK_THROWS_AS(store.add_pattern({"x", "a", "#x", "x"}, {}, 1, ""), ValidationError);
}

TEST_CASE("explicit marks override the fallback rule") {
    KnowledgeStore store;
    PatternId id = store.add_pattern({"penguin", "bird", "cannotfly", "#bird", "#penguin"},
                                     {true, true, false, true, true}, 10, "penguin");
    const Pattern& p = store.pattern(id);
    CHECK(p.occs[0].role == Role::Identification);
    CHECK(p.occs[1].role == Role::Identification);
    CHECK(p.occs[2].role == Role::Contents);
    CHECK(p.occs[3].role == Role::Identification);
    CHECK(p.occs[4].role == Role::Identification);
}

TEST_CASE("uniform store prices every symbol at 2 bits") {
    KnowledgeStore store;
    store.add_pattern({"a", "b"}, {}, 1, "");
    store.add_pattern({"c", "d"}, {}, 1, "");
    const CostModel& costs = store.seal_and_build_costs();
    for (const char* s : {"a", "b", "c", "d"}) {
        CHECK(costs.cost(store.symbols().find(s)) == doctest::Approx(2.0).epsilon(1e-12));
    }
    CHECK(costs.novel_cost() == doctest::Approx(std::log2(5.0)).epsilon(1e-12));
    CHECK_THROWS_AS(store.add_pattern({"e"}, {}, 1, ""), ValidationError);
}

TEST_CASE("doubling every frequency leaves costs bitwise unchanged") {
    KnowledgeStore s1, s2;
    s1.add_pattern({"a", "b"}, {}, 1, "");
    s1.add_pattern({"c", "d"}, {}, 1, "");
    s2.add_pattern({"a", "b"}, {}, 2, "");
    s2.add_pattern({"c", "d"}, {}, 2, "");
    const CostModel& c1 = s1.seal_and_build_costs();
    const CostModel& c2 = s2.seal_and_build_costs();
    for (const char* s : {"a", "b", "c", "d"}) {
        CHECK(c1.cost(s1.symbols().find(s)) == c2.cost(s2.symbols().find(s)));
    }
}

TEST_CASE("empty store cannot be sealed") {
    KnowledgeStore store;
    CHECK_THROWS_AS(store.seal_and_build_costs(), ValidationError);
}

TEST_CASE("cost model matches an independent tally of the people ontology") {
    KnowledgeStore store = load_kb_text(test::kPeopleKb);
    const CostModel& costs = store.costs();

    // Re-tally from the raw text, independently of the store internals.
    std::map<std::string, std::uint64_t> tally;
    std::uint64_t mass = 0;
    std::istringstream in(test::kPeopleKb);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tok;
        std::vector<std::string> toks;
        while (ls >> tok) toks.push_back(tok);
        if (toks.empty()) continue;
        for (std::size_t i = 1; i + 1 < toks.size(); ++i) {  // skip label and ';'
            ++tally[toks[i]];
            ++mass;
        }
    }
    CHECK(store.total_frequency_mass() == mass);
    for (const auto& [name, f] : tally) {
        SymbolId s = store.symbols().find(name);
        REQUIRE(s != kNoSymbol);
        CHECK(costs.occurrence_count(s) == f);
        CHECK(costs.cost(s) ==
              doctest::Approx(-std::log2(double(f) / double(mass))).epsilon(1e-12));
    }
    CHECK(costs.cost(store.symbols().find("person")) <
          costs.cost(store.symbols().find("Dorking")));
}

TEST_CASE("determinism: same insertion order, same ids and costs") {
    KnowledgeStore s1 = load_kb_text(test::kPeopleKb);
    KnowledgeStore s2 = load_kb_text(test::kPeopleKb);
    REQUIRE(s1.symbols().size() == s2.symbols().size());
    for (std::size_t i = 0; i < s1.symbols().size(); ++i) {
        CHECK(s1.symbols().name(static_cast<SymbolId>(i)) ==
              s2.symbols().name(static_cast<SymbolId>(i)));
        CHECK(s1.costs().cost(static_cast<SymbolId>(i)) == s2.costs().cost(static_cast<SymbolId>(i)));
    }
}
