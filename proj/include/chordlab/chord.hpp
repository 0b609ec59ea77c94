#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace chordlab {

// Rooted chord diagram on endpoints 0..2n-1 (0-based internally; literals are
// 1-based). Chords are indexed by the order of their first endpoints, so the
// root is chord 0.
class ChordDiagram {
public:
    ChordDiagram() = default;
    explicit ChordDiagram(std::vector<int> partner);
    static ChordDiagram from_chords(const std::vector<std::pair<int, int>>& chords);
    static ChordDiagram single_chord() { return ChordDiagram({1, 0}); }

    int size() const { return static_cast<int>(p_.size()) / 2; }
    int endpoints() const { return static_cast<int>(p_.size()); }
    bool empty() const { return p_.empty(); }
    int partner(int pos) const { return p_[pos]; }
    const std::vector<int>& partners() const { return p_; }

    // (first, second) endpoint per chord, ordered by first endpoint.
    std::vector<std::pair<int, int>> chords() const;
    // Chord index of every endpoint.
    std::vector<int> chord_index() const;

    // "n: p1 p2 ... p2n" with 1-based partners.
    std::string literal() const;
    static ChordDiagram parse(const std::string& text);

    friend bool operator==(const ChordDiagram& a, const ChordDiagram& b) { return a.p_ == b.p_; }
    friend bool operator<(const ChordDiagram& a, const ChordDiagram& b) { return a.p_ < b.p_; }

private:
    std::vector<int> p_;
};

// Default resource guard for exhaustive enumeration.
inline constexpr int kDefaultMaxEnumerationN = 10;

// Depth-first: the smallest free endpoint is paired with candidates in
// increasing order. Throws std::invalid_argument when n exceeds the guard.
void enumerate_diagrams(int n, const std::function<void(const ChordDiagram&)>& visit,
                        int guard = kDefaultMaxEnumerationN);
std::vector<ChordDiagram> all_diagrams(int n, int guard = kDefaultMaxEnumerationN);

bool chords_cross(const std::pair<int, int>& a, const std::pair<int, int>& b);
std::vector<std::vector<int>> intersection_graph(const ChordDiagram& d);
// Component id per chord; components numbered by their first endpoint.
std::vector<int> components(const ChordDiagram& d, int* count = nullptr);
int component_count(const ChordDiagram& d);
bool is_connected(const ChordDiagram& d);

// Minimum cut size over consecutive endpoint windows that leave at least one
// whole chord on each side; a diagram with no such window has connectivity n.
int connectivity(const ChordDiagram& d);
bool is_k_connected(const ChordDiagram& d, int k);
// Oracle: fewest chords whose deletion leaves >= 2 components (n if none).
int connectivity_by_deletion(const ChordDiagram& d);

bool is_indecomposable(const ChordDiagram& d);

// Diagram induced by the given chords (indices), keeping relative order.
// If old_index is given it receives the source chord of every new chord.
ChordDiagram induced(const ChordDiagram& d, const std::vector<int>& chord_ids,
                     std::vector<int>* old_index = nullptr);
ChordDiagram concat(const ChordDiagram& a, const ChordDiagram& b);
// Place `inner` into interval k of `outer` (k = 0 is the front, k = j is right
// of endpoint j, 1-based, so k = 2m is the end).
ChordDiagram insert_at_interval(const ChordDiagram& outer, int k, const ChordDiagram& inner,
                                std::vector<int>* outer_map = nullptr,
                                std::vector<int>* inner_map = nullptr);

std::vector<int> root_component(const ChordDiagram& d);

struct Dangling {
    ChordDiagram left, right;
    std::vector<int> left_chords, right_chords;  // source chord ids
};
// Sub-diagrams in the gaps right after the two endpoints of a root-component chord.
Dangling dangling(const ChordDiagram& d, int chord);

struct RootDecomposition {
    ChordDiagram core;  // root component
    std::vector<std::pair<ChordDiagram, ChordDiagram>> danglings;  // per core chord
};
RootDecomposition decompose_root(const ChordDiagram& d);
ChordDiagram assemble_root(const ChordDiagram& core,
                           const std::vector<std::pair<ChordDiagram, ChordDiagram>>& danglings);

struct Reason {
    int lo, hi;  // inclusive 0-based endpoint window
    int cut;     // chord index of the cut chord
    bool contains(const Reason& o) const { return lo <= o.lo && o.hi <= hi; }
    friend bool operator==(const Reason& a, const Reason& b) {
        return a.lo == b.lo && a.hi == b.hi && a.cut == b.cut;
    }
};
// Empty unless d has connectivity 1.
std::vector<Reason> reasons_and_cuts(const ChordDiagram& d);
std::vector<Reason> minimal_reasons(const std::vector<Reason>& rs);
std::vector<Reason> maximal_reasons(const std::vector<Reason>& rs);

// Labelling: root gets 1, the components left after removing the root are
// ordered by first endpoint and labelled recursively. Returns label per chord.
std::vector<int> intersection_labels(const ChordDiagram& d);
// Edge list in label space, sorted; a key for the labelled intersection graph.
std::vector<std::pair<int, int>> labelled_intersection_edges(const ChordDiagram& d);

struct ClassCounts {
    std::uint64_t total = 0, connected = 0, two_connected = 0, connectivity_one = 0,
                  indecomposable = 0;
};
ClassCounts classify_all(int n, int guard = kDefaultMaxEnumerationN);

}  // namespace chordlab
