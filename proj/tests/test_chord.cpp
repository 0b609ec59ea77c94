#include "chordlab/chord.hpp"

#include <map>
#include <set>

#include <stdexcept>

#include "doctest.h"

using namespace chordlab;

static ChordDiagram lit(const std::string& s) { return ChordDiagram::parse(s); }

TEST_CASE("literal roundtrip and validation") {
    ChordDiagram d = lit("2: 3 4 1 2");
    CHECK(d.size() == 2);
    CHECK(d.literal() == "2: 3 4 1 2");
    CHECK_THROWS_AS(lit("2: 2 1 3 3"), std::invalid_argument);
    CHECK_THROWS_AS(lit("2: 2 1"), std::invalid_argument);
    CHECK_THROWS_AS(ChordDiagram({0, 1}), std::invalid_argument);
}

TEST_CASE("enumeration counts and order") {
    CHECK(all_diagrams(1).size() == 1);
    CHECK(all_diagrams(4).size() == 105);
    CHECK(all_diagrams(6).size() == 10395);
    auto d3 = all_diagrams(3);
    std::set<ChordDiagram> uniq(d3.begin(), d3.end());
    CHECK(uniq.size() == 15);
    CHECK(d3.front().literal() == "3: 2 1 4 3 6 5");
    CHECK(d3.back().literal() == "3: 6 5 4 3 2 1");
    CHECK_THROWS_AS(all_diagrams(11), std::invalid_argument);
    CHECK(all_diagrams(0).size() == 1);
}

TEST_CASE("connectivity basics") {
    ChordDiagram cross = lit("2: 3 4 1 2");
    CHECK(connectivity(cross) == 2);
    CHECK(is_connected(cross));
    ChordDiagram one = ChordDiagram::single_chord();
    CHECK(is_connected(one));
    CHECK(connectivity(one) == 1);
    ChordDiagram nested = lit("2: 4 3 2 1");
    CHECK(!is_connected(nested));
    CHECK(connectivity(nested) == 0);
    CHECK(is_k_connected(cross, 2));
    CHECK(!is_k_connected(cross, 3));
}

TEST_CASE("class counts for n = 4") {
    ClassCounts cc = classify_all(4);
    CHECK(cc.total == 105);
    CHECK(cc.connected == 27);
    CHECK(cc.two_connected == 7);
    CHECK(cc.connectivity_one == 20);
    CHECK(cc.indecomposable == 74);
}

TEST_CASE("fast classifier agrees with predicates") {
    for (int n = 1; n <= 5; ++n) {
        ClassCounts slow;
        enumerate_diagrams(n, [&](const ChordDiagram& d) {
            ++slow.total;
            if (is_indecomposable(d)) ++slow.indecomposable;
            if (!is_connected(d)) return;
            ++slow.connected;
            if (connectivity(d) >= 2)
                ++slow.two_connected;
            else
                ++slow.connectivity_one;
        });
        ClassCounts fast = classify_all(n);
        CHECK(fast.total == slow.total);
        CHECK(fast.connected == slow.connected);
        CHECK(fast.two_connected == slow.two_connected);
        CHECK(fast.connectivity_one == slow.connectivity_one);
        CHECK(fast.indecomposable == slow.indecomposable);
    }
}

TEST_CASE("window connectivity equals deletion connectivity") {
    for (int n = 1; n <= 6; ++n)
        enumerate_diagrams(n, [&](const ChordDiagram& d) {
            CHECK(connectivity(d) == connectivity_by_deletion(d));
        });
}

TEST_CASE("indecomposable") {
    CHECK(is_indecomposable(lit("2: 4 3 2 1")));
    CHECK(!is_indecomposable(lit("2: 2 1 4 3")));
    CHECK(is_indecomposable(ChordDiagram()));
    std::vector<int> expect{1, 2, 10, 74, 706};
    for (int n = 1; n <= 5; ++n) {
        int c = 0;
        enumerate_diagrams(n, [&](const ChordDiagram& d) { c += is_indecomposable(d); });
        CHECK(c == expect[n - 1]);
    }
}

TEST_CASE("root component and danglings") {
    ChordDiagram one = ChordDiagram::single_chord();
    CHECK(root_component(one) == std::vector<int>{0});
    Dangling g = dangling(one, 0);
    CHECK(g.left.empty());
    CHECK(g.right.empty());
    // chord 1 nested inside the root, chord 2 after it
    ChordDiagram d = lit("3: 4 3 2 1 6 5");
    CHECK(root_component(d) == std::vector<int>{0});
    Dangling h = dangling(d, 0);
    CHECK(h.left.literal() == "1: 2 1");
    CHECK(h.right.literal() == "1: 2 1");
    CHECK_THROWS_AS(dangling(d, 1), std::invalid_argument);
    // a chain of three crossing chords
    ChordDiagram e = lit("3: 3 5 1 6 2 4");
    auto rc = root_component(e);
    CHECK(rc.size() == 3);
    CHECK(dangling(e, 0).left.empty());
}

TEST_CASE("root decomposition roundtrip") {
    for (int n = 1; n <= 6; ++n)
        enumerate_diagrams(n, [&](const ChordDiagram& d) {
            RootDecomposition r = decompose_root(d);
            CHECK(is_connected(r.core));
            CHECK(assemble_root(r.core, r.danglings) == d);
        });
}

TEST_CASE("reasons for connectivity one") {
    CHECK(reasons_and_cuts(ChordDiagram::single_chord()).empty());
    int c1 = 0;
    enumerate_diagrams(3, [&](const ChordDiagram& d) {
        if (!reasons_and_cuts(d).empty()) ++c1;
    });
    CHECK(c1 == 3);
    for (int n = 2; n <= 7; ++n)
        enumerate_diagrams(n, [&](const ChordDiagram& d) {
            auto rs = reasons_and_cuts(d);
            if (!is_connected(d) || connectivity(d) != 1) {
                CHECK(rs.empty());
                return;
            }
            CHECK(!rs.empty());
            for (const auto& a : rs) {
                // the cut really disconnects once removed
                std::vector<int> keep;
                for (int c = 0; c < d.size(); ++c)
                    if (c != a.cut) keep.push_back(c);
                CHECK(component_count(induced(d, keep)) >= 2);
                for (const auto& b : rs) {
                    // a window and its complement can both be reasons, so the
                    // laminar property holds only for windows avoiding the root end
                    bool disjoint = a.hi < b.lo || b.hi < a.lo;
                    bool nested = a.contains(b) || b.contains(a);
                    if ((a.lo > 0 && b.lo > 0) || a.cut == b.cut) CHECK((disjoint || nested));
                }
            }
            CHECK(!minimal_reasons(rs).empty());
            CHECK(!maximal_reasons(rs).empty());
        });
}

TEST_CASE("overlapping reasons exist when the root end is allowed") {
    auto rs = reasons_and_cuts(lit("4: 3 5 1 7 2 8 4 6"));
    bool overlap = false;
    for (const auto& a : rs)
        for (const auto& b : rs)
            if (a.lo < b.lo && b.lo <= a.hi && a.hi < b.hi) overlap = true;
    CHECK(overlap);
}

TEST_CASE("labelled intersection graph determines connected diagrams") {
    for (int n = 1; n <= 6; ++n) {
        std::map<std::vector<std::pair<int, int>>, ChordDiagram> seen;
        bool injective = true;
        enumerate_diagrams(n, [&](const ChordDiagram& d) {
            if (!is_connected(d)) return;
            auto key = labelled_intersection_edges(d);
            auto [it, fresh] = seen.emplace(key, d);
            if (!fresh) injective = false;
        });
        CHECK(injective);
    }
}

TEST_CASE("structural helpers") {
    ChordDiagram a = ChordDiagram::single_chord();
    CHECK(concat(a, a).literal() == "2: 2 1 4 3");
    ChordDiagram cross = lit("2: 3 4 1 2");
    std::vector<int> om, im;
    ChordDiagram r = insert_at_interval(cross, 1, a, &om, &im);
    CHECK(r.literal() == "3: 5 3 2 6 1 4");
    CHECK(om == std::vector<int>{0, 2});
    CHECK(im == std::vector<int>{1});
    std::vector<int> old;
    ChordDiagram s = induced(r, {0, 2}, &old);
    CHECK(s == cross);
    CHECK(old == std::vector<int>{0, 2});
}
