#pragma once

#include <functional>
#include <string>
#include <vector>

#include "chordlab/chord.hpp"
#include "chordlab/fps.hpp"
#include "chordlab/gfseries.hpp"

namespace chordlab {

// Yukawa tadpole: 3-valent vertices 0..V-1 on oriented fermion loops.
// next[v] is the counter-clockwise successor of v on its loop and boson[v]
// the other end of the boson edge at v, or -1 at the leg vertex.
struct Tadpole {
    std::vector<int> next, boson;

    int vertex_count() const { return static_cast<int>(next.size()); }
    int loops() const { return (vertex_count() + 1) / 2; }
    int leg() const;
    int prev(int v) const;
    bool is_x() const { return vertex_count() == 1; }

    static Tadpole x();
    // "loops: (1 2 3)(4 5) ; bosons: 2-4, 3-5 ; leg: 1", vertices 1-based.
    static Tadpole parse(const std::string& text);
    std::string literal() const;

    friend bool operator==(const Tadpole& a, const Tadpole& b) {
        return a.next == b.next && a.boson == b.boson;
    }
    friend bool operator<(const Tadpole& a, const Tadpole& b) {
        return a.next != b.next ? a.next < b.next : a.boson < b.boson;
    }
};

// Empty if t is structurally valid (permutation, matching, one leg).
std::string validate_tadpole(const Tadpole& t);
// Connected and free of bridges; the leg does not count as an edge.
bool is_1pi(const Tadpole& t);
// Relabels by breadth-first search from the leg, successor before boson.
// Requires a connected tadpole. old_to_new receives the relabelling.
Tadpole canonical(const Tadpole& t, std::vector<int>* old_to_new = nullptr);

inline constexpr int kMaxTadpoleLoops = 4;
// Canonical 1PI tadpoles with the given loop number, sorted. loops above
// kMaxTadpoleLoops need allow_five (and at most 5).
std::vector<Tadpole> enumerate_tadpoles(int loops, bool allow_five = false);

// Distinguished vertex on T2: a vertex id, or kLegEnd for the free end u2.
inline constexpr int kLegEnd = -1;

struct PsiResult {
    bool is_pair = false;  // case d = u2: the input pair is returned
    Tadpole t1, t2;        // set when is_pair
    Tadpole t;             // canonical, set otherwise
};
PsiResult psi(const Tadpole& t1, const Tadpole& t2, int d);

struct PsiSplit {
    Tadpole t1, t2;  // canonical
    int d = 0;       // vertex of t2
    std::vector<int> t1_to_t, t2_to_t;
    bool first_case = false;  // t1 is X
    int bridge_steps = 0;     // iterations of the bridge chase
};
// Throws std::invalid_argument on X or a non-1PI input.
PsiSplit psi_inv(const Tadpole& t);

// psi_order(t)[v] is the rank of the fermion edge leaving v.
std::vector<int> psi_order(const Tadpole& t);

ChordDiagram lambda_bij(const Tadpole& t);
Tadpole lambda_inv(const ChordDiagram& c);

// Quenched QED vertex graph: fermion path 0..2m, photon[v] the partner of v,
// -1 at the vertex carrying the external photon.
struct QQEDVertexGraph {
    std::vector<int> photon;
    int loops() const { return static_cast<int>(photon.size()) / 2; }
    int leg() const;
};
std::string validate_qqed(const QQEDVertexGraph& g);
void enumerate_qqed(int loops, const std::function<void(const QQEDVertexGraph&)>& visit);
// Root from a new front endpoint to the leg vertex; vertex v is endpoint v+1.
ChordDiagram qqed_chord(const QQEDVertexGraph& g);
QQEDVertexGraph qqed_from_chord(const ChordDiagram& c);
bool qqed_is_1pi(const QQEDVertexGraph& g);
// Graph-side test: 1PI and no proper 1PI path segment with one or zero
// photon legs (vertex or self-energy subdivergence).
bool qqed_primitive(const QQEDVertexGraph& g);

std::vector<IdentityReport> green_identities(int order);

struct GreenRow {
    std::string label;
    std::vector<Rational> expected;  // hbar^0..hbar^6
    int shift = 0;                   // hbar^k is [x^(k+shift)] of compute
    bool hbar0_convention = false;   // hbar^0 entry is a stored constant
    std::function<Series(int)> compute;
};
const std::vector<GreenRow>& green_rows();
// Empty on success, otherwise the first mismatch.
std::string check_green_row(const GreenRow& row);

}  // namespace chordlab
