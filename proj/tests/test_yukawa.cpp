#include <map>
#include <set>
#include <stdexcept>

#include "chordlab/bijections.hpp"
#include "chordlab/yukawa.hpp"
#include "doctest.h"

using namespace chordlab;

namespace {

const std::vector<Tadpole>& tadpoles(int n) {
    static std::map<int, std::vector<Tadpole>> cache;
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, enumerate_tadpoles(n)).first;
    return it->second;
}

}  // namespace

TEST_CASE("tadpole literal roundtrip and validation") {
    Tadpole t = Tadpole::parse("loops: (1 2 3) ; bosons: 2-3 ; leg: 1");
    CHECK(t.vertex_count() == 3);
    CHECK(t.loops() == 2);
    CHECK(t.leg() == 0);
    CHECK(Tadpole::parse(t.literal()) == t);
    CHECK(is_1pi(t));
    CHECK(is_1pi(Tadpole::x()));
    CHECK_THROWS_AS(Tadpole::parse("loops: (1 2) ; bosons: 1-2 ; leg: 1"), std::invalid_argument);
    CHECK_THROWS_AS(Tadpole::parse("loops: (1 2 3) ; bosons: 2-3"), std::invalid_argument);
    // boson 2-3 is a bridge between the two loops
    CHECK_FALSE(is_1pi(Tadpole::parse("loops: (1 2)(3) ; bosons: 2-3 ; leg: 1")));
}

TEST_CASE("canonical form ignores vertex names") {
    Tadpole a = Tadpole::parse("loops: (1 2 3) ; bosons: 2-3 ; leg: 1");
    Tadpole b = Tadpole::parse("loops: (3 1 2) ; bosons: 1-2 ; leg: 3");
    CHECK(canonical(a) == canonical(b));
}

TEST_CASE("tadpole counts follow connected chord diagrams") {
    const std::vector<std::size_t> expected{1, 1, 4, 27};
    for (int n = 1; n <= 4; ++n) {
        CHECK(tadpoles(n).size() == expected[n - 1]);
        for (const auto& t : tadpoles(n)) {
            CHECK(is_1pi(t));
            CHECK(canonical(t) == t);
            CHECK(t.loops() == n);
        }
    }
    CHECK_THROWS_AS(enumerate_tadpoles(5), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_tadpoles(6, true), std::invalid_argument);
}

TEST_CASE("psi with the free leg end returns the pair") {
    Tadpole t2 = tadpoles(2).front();
    PsiResult r = psi(Tadpole::x(), t2, kLegEnd);
    CHECK(r.is_pair);
    CHECK(r.t1 == Tadpole::x());
    CHECK(r.t2 == t2);
    CHECK_THROWS_AS(psi(Tadpole::x(), t2, 7), std::invalid_argument);
}

TEST_CASE("psi_inv after psi is the identity, and psi is onto") {
    for (int n = 2; n <= 4; ++n) {
        std::set<Tadpole> image;
        for (int n1 = 1; n1 < n; ++n1)
            for (const auto& t1 : tadpoles(n1))
                for (const auto& t2 : tadpoles(n - n1))
                    for (int d = 0; d < t2.vertex_count(); ++d) {
                        PsiResult r = psi(t1, t2, d);
                        REQUIRE_FALSE(r.is_pair);
                        CHECK(is_1pi(r.t));
                        CHECK(r.t.loops() == n);
                        PsiSplit s = psi_inv(r.t);
                        CHECK(s.t1 == t1);
                        CHECK(s.t2 == t2);
                        CHECK(s.d == d);
                        CHECK(s.first_case == t1.is_x());
                        image.insert(r.t);
                    }
        CHECK(image.size() == tadpoles(n).size());
        for (const auto& t : tadpoles(n)) {
            PsiSplit s = psi_inv(t);
            CHECK(psi(s.t1, s.t2, s.d).t == t);
        }
    }
    CHECK_THROWS_AS(psi_inv(Tadpole::x()), std::invalid_argument);
}

TEST_CASE("bridge chase runs more than once") {
    // a chain of two bridges between the leg side and the T2 part
    int most = 0;
    for (const auto& t : tadpoles(4)) most = std::max(most, psi_inv(t).bridge_steps);
    CHECK(most >= 2);
}

TEST_CASE("psi_inv vertex maps are consistent") {
    for (const auto& t : tadpoles(4)) {
        PsiSplit s = psi_inv(t);
        std::set<int> used(s.t1_to_t.begin(), s.t1_to_t.end());
        used.insert(s.t2_to_t.begin(), s.t2_to_t.end());
        CHECK(static_cast<int>(used.size()) == t.vertex_count() - 1);
        CHECK_FALSE(used.count(t.next[t.leg()]));
        CHECK(s.t1_to_t[s.t1.leg()] == t.leg());
    }
}

TEST_CASE("psi order is a bijection onto 1..edges") {
    CHECK(psi_order(Tadpole::x()) == std::vector<int>{1});
    for (int n = 1; n <= 4; ++n)
        for (const auto& t : tadpoles(n)) {
            auto p = psi_order(t);
            std::vector<int> sorted = p;
            std::sort(sorted.begin(), sorted.end());
            for (int i = 0; i < t.vertex_count(); ++i) CHECK(sorted[i] == i + 1);
            CHECK(p[t.leg()] == 1);
        }
}

TEST_CASE("psi order of the two-loop tadpole") {
    Tadpole t = tadpoles(2).front();
    auto p = psi_order(t);
    // leg vertex, then the predecessor of the leg, then the subdivision vertex
    const int v = t.leg();
    CHECK(p[v] == 1);
    CHECK(p[t.prev(v)] == 2);
    CHECK(p[t.next[v]] == 3);
}

TEST_CASE("lambda is a bijection onto connected diagrams") {
    CHECK(lambda_bij(Tadpole::x()) == ChordDiagram::single_chord());
    const std::vector<std::size_t> expected{1, 1, 4, 27};
    for (int n = 1; n <= 4; ++n) {
        std::set<ChordDiagram> image;
        for (const auto& t : tadpoles(n)) {
            ChordDiagram c = lambda_bij(t);
            CHECK(c.size() == n);
            CHECK(is_connected(c));
            CHECK(lambda_inv(c) == t);
            image.insert(c);
        }
        CHECK(image.size() == expected[n - 1]);
    }
}

TEST_CASE("quenched QED chord representation") {
    std::map<int, int> prim;
    for (int loops = 1; loops <= 5; ++loops) {
        std::set<ChordDiagram> seen;
        int total = 0;
        enumerate_qqed(loops, [&](const QQEDVertexGraph& g) {
            ++total;
            ChordDiagram c = qqed_chord(g);
            CHECK(c.size() == loops + 1);
            seen.insert(c);
            CHECK(qqed_from_chord(c).photon == g.photon);
            const bool p = qqed_primitive(g);
            CHECK(p == is_k_connected(c, 2));
            if (p) ++prim[loops + 1];
        });
        CHECK(static_cast<int>(seen.size()) == total);
    }
    CHECK(prim[2] == 1);
    CHECK(prim[3] == 1);
    CHECK(prim[4] == 7);
    CHECK(prim[5] == 63);
    CHECK(prim[6] == 729);
}

TEST_CASE("quenched QED examples") {
    // one photon over the leg: the single primitive one-loop vertex
    QQEDVertexGraph g{{2, -1, 0}};
    CHECK(qqed_is_1pi(g));
    CHECK(qqed_primitive(g));
    CHECK(qqed_chord(g).literal() == "2: 3 4 1 2");
    // self-energy insertion on a leg: not 1PI
    QQEDVertexGraph se{{-1, 2, 1}};
    CHECK_FALSE(qqed_is_1pi(se));
    CHECK_FALSE(qqed_primitive(se));
    // vertex subdivergence nested inside a larger photon
    QQEDVertexGraph nested{{4, 3, -1, 1, 0}};
    CHECK(qqed_is_1pi(nested));
    CHECK_FALSE(qqed_primitive(nested));
    // self-energy on an internal line
    QQEDVertexGraph internal_se{{6, 5, 3, 2, -1, 1, 0}};
    CHECK(validate_qqed(internal_se).empty());
    CHECK_FALSE(qqed_primitive(internal_se));
    CHECK_FALSE(validate_qqed(QQEDVertexGraph{{1, 0}}).empty());
    CHECK_THROWS_AS(qqed_chord(QQEDVertexGraph{{0, -1, 2}}), std::invalid_argument);
}

TEST_CASE("Green function identities") {
    for (const auto& r : green_identities(16)) CHECK_MESSAGE(r.ok, r.name << " " << r.detail);
    CHECK_THROWS_AS(green_identities(40), std::invalid_argument);
}

TEST_CASE("Green function rows") {
    for (const auto& row : green_rows()) CHECK_MESSAGE(check_green_row(row).empty(), check_green_row(row));
    GreenRow bad = green_rows()[1];
    bad.expected[3] = 5;
    CHECK_FALSE(check_green_row(bad).empty());
}
