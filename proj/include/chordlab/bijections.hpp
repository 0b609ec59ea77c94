#pragma once

#include <string>
#include <vector>

#include "chordlab/chord.hpp"

namespace chordlab {

// Root share decomposition. c2 is the component of d minus its root that holds
// the chord starting right after the root; c1 is the rest (it keeps the root).
// The far end of the root sits right of endpoint k of c2.
struct RootShareTriple {
    ChordDiagram c1, c2;
    int k = 0;
    friend bool operator==(const RootShareTriple& a, const RootShareTriple& b) {
        return a.c1 == b.c1 && a.c2 == b.c2 && a.k == b.k;
    }
};

// Throws std::invalid_argument unless d is connected with at least 2 chords.
RootShareTriple nabla(const ChordDiagram& d);
// Throws std::invalid_argument on disconnected parts or k outside 1..2|c2|-1.
ChordDiagram nabla_inv(const RootShareTriple& t);

// Places c1 whole into interval k of c2. chord_map[c] is the image of chord c.
ChordDiagram phi(const ChordDiagram& d, std::vector<int>* chord_map = nullptr);
// Pulls the first end of the inner component to the front. Throws unless d is
// indecomposable with exactly two components.
ChordDiagram phi_inv(const ChordDiagram& d, std::vector<int>* chord_map = nullptr);
bool in_phi_image(const ChordDiagram& d);

// A chord with a left diagram nested under it and a right diagram after it.
struct Seed {
    ChordDiagram left, right;
    int size() const { return 1 + left.size() + right.size(); }
    ChordDiagram diagram() const;
    // Throws std::invalid_argument if the root of d crosses another chord.
    static Seed from_diagram(const ChordDiagram& d);
    friend bool operator==(const Seed& a, const Seed& b) { return a.left == b.left && a.right == b.right; }
};
std::vector<Seed> all_seeds(int n);

// Rooted tree whose vertices are stacks of labels; the children of a vertex
// carry a diagram with at most two components, child i sitting on chord i.
struct ZVertex {
    std::vector<int> stack;
    ChordDiagram structure;
    std::vector<int> children;
};
struct ZTree {
    std::vector<ZVertex> vertices;  // vertex 0 is the root
    int label_count() const;
    // (labels [structure literal] child child ...), labels joined by '.'
    std::string serialize() const;
};
// Empty when the tree satisfies the structural invariants, else the reason.
std::string validate_ztree(const ZTree& t);

// Labels are chord indices of seed.diagram().
ZTree theta(const Seed& seed);
Seed theta_inv(const ZTree& t);

}  // namespace chordlab
