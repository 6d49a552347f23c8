#include <doctest.h>

#include <nlohmann/json.hpp>

#include "prodone/sequence.hpp"

using namespace prodone;

TEST_CASE("parse / format round trip") {
    GroupSpec g = GroupSpec::make(8, 3);
    for (const char* txt : {"", "1", "x", "y^3", "x*y^5", "y^1^[7] . x",
                            "1^[2] . y^1 . y^3^[4] . x . x*y^7^[2]"}) {
        Sequence s = parse_sequence(txt, g);
        CHECK(format_sequence(s) == txt);
        CHECK(parse_sequence(format_sequence(s), g) == s);
    }
}

TEST_CASE("parser normalizes exponents and merges terms") {
    GroupSpec g = GroupSpec::make(8, 3);
    CHECK(parse_sequence("y^11", g) == parse_sequence("y^3", g));
    CHECK(parse_sequence("y^0", g) == parse_sequence("1", g));
    CHECK(parse_sequence("y^2 . y^2 . y^2", g) == parse_sequence("y^2^[3]", g));
    CHECK(format_sequence(parse_sequence("x . y^1", g)) == "y^1 . x");  // flat order
}

TEST_CASE("parse errors carry positions") {
    GroupSpec g = GroupSpec::make(8, 3);
    for (auto [txt, pos] : {std::pair<const char*, size_t>{"z", 0},
                            {"y^", 2},
                            {"y^3 , x", 3},
                            {"y^3^[0]", 5},
                            {"y^3^[2", 6},
                            {"x*x", 1}}) {
        try {
            parse_sequence(txt, g);
            FAIL("expected ParseError for ", txt);
        } catch (const ParseError& e) {
            CHECK(e.position == pos);
        }
    }
}

TEST_CASE("multiset operations") {
    GroupSpec g = GroupSpec::make(6, 5);
    Sequence s(g);
    CHECK(s.empty());
    s.add({0, 2}, 3);
    s.add({1, 0});
    s.add({0, 2});
    CHECK(s.length() == 5);
    CHECK(s.multiplicity({0, 2}) == 4);
    CHECK(s.contains({1, 0}));
    s.remove({0, 2}, 2);
    CHECK(s.multiplicity({0, 2}) == 2);
    CHECK_THROWS(s.remove({0, 5}));
    CHECK_THROWS(s.remove({1, 0}, 2));

    auto ex = s.expand();
    CHECK(ex.size() == 3);
    CHECK(std::is_sorted(ex.begin(), ex.end(), [&](Element a, Element b) {
        return g.flat(a) < g.flat(b);
    }));
}

TEST_CASE("counts / from_counts") {
    GroupSpec g = GroupSpec::make(8, 5);
    GroupView v = GroupView::full(g);
    Sequence s = parse_sequence("y^1^[7] . x*y^2", g);
    auto c = s.counts(v);
    CHECK((int)c.size() == v.size());
    CHECK(c[1] == 7);
    CHECK(c[v.index({1, 2})] == 1);
    CHECK(Sequence::from_counts(v, c) == s);

    GroupView cy = GroupView::cyclic(g);
    Sequence t = parse_sequence("y^1^[3] . y^7", g);
    CHECK(Sequence::from_counts(cy, t.counts(cy)) == t);
}

TEST_CASE("json round trip") {
    GroupSpec g = GroupSpec::make(12, 5);
    Sequence s = parse_sequence("y^2^[5] . x*y^3 . 1", g);
    nlohmann::json j = sequence_to_json(s);
    CHECK(sequence_from_json(j, g) == s);
}
