#include "chordlab/bijections.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <stdexcept>

namespace chordlab {

namespace {

// Moves endpoint `pos` to the front. map[c] is the new index of chord c.
ChordDiagram pull_to_front(const ChordDiagram& d, int pos, std::vector<int>* map) {
    const int m = d.endpoints();
    std::vector<int> order;  // new position -> old position
    order.reserve(m);
    order.push_back(pos);
    for (int i = 0; i < m; ++i)
        if (i != pos) order.push_back(i);
    std::vector<int> where(m);
    for (int i = 0; i < m; ++i) where[order[i]] = i;
    std::vector<int> p(m);
    for (int i = 0; i < m; ++i) p[i] = where[d.partner(order[i])];
    ChordDiagram out(p);
    if (map) {
        auto old_idx = d.chord_index();
        auto new_idx = out.chord_index();
        map->assign(d.size(), -1);
        for (int i = 0; i < m; ++i) (*map)[old_idx[i]] = new_idx[where[i]];
    }
    return out;
}

void require_connected(const ChordDiagram& d, const char* what) {
    if (!is_connected(d)) throw std::invalid_argument(std::string(what) + ": diagram must be connected");
}

struct Split {
    std::vector<int> c1_ids, c2_ids;
    int k = 0;
};

Split split_root(const ChordDiagram& d) {
    std::vector<int> rest;
    for (int c = 1; c < d.size(); ++c) rest.push_back(c);
    std::vector<int> old;
    ChordDiagram sub = induced(d, rest, &old);
    auto comp = components(sub);
    Split s;
    s.c1_ids.push_back(0);
    for (int i = 0; i < sub.size(); ++i) (comp[i] == comp[0] ? s.c2_ids : s.c1_ids).push_back(old[i]);
    std::sort(s.c1_ids.begin(), s.c1_ids.end());
    auto idx = d.chord_index();
    const int far = d.partner(0);
    for (int pos = 1; pos < far; ++pos)
        if (std::binary_search(s.c2_ids.begin(), s.c2_ids.end(), idx[pos])) ++s.k;
    return s;
}

}  // namespace

RootShareTriple nabla(const ChordDiagram& d) {
    if (d.size() < 2) throw std::invalid_argument("nabla: need at least two chords");
    require_connected(d, "nabla");
    Split s = split_root(d);
    return {induced(d, s.c1_ids), induced(d, s.c2_ids), s.k};
}

ChordDiagram nabla_inv(const RootShareTriple& t) {
    require_connected(t.c1, "nabla_inv");
    require_connected(t.c2, "nabla_inv");
    if (t.k < 1 || t.k > t.c2.endpoints() - 1) throw std::invalid_argument("nabla_inv: k out of range");
    return pull_to_front(insert_at_interval(t.c2, t.k, t.c1), t.k, nullptr);
}

ChordDiagram phi(const ChordDiagram& d, std::vector<int>* chord_map) {
    if (d.size() < 2) throw std::invalid_argument("phi: need at least two chords");
    require_connected(d, "phi");
    Split s = split_root(d);
    std::vector<int> om, im;
    ChordDiagram out =
        insert_at_interval(induced(d, s.c2_ids), s.k, induced(d, s.c1_ids), &om, &im);
    if (chord_map) {
        chord_map->assign(d.size(), -1);
        for (std::size_t i = 0; i < s.c2_ids.size(); ++i) (*chord_map)[s.c2_ids[i]] = om[i];
        for (std::size_t j = 0; j < s.c1_ids.size(); ++j) (*chord_map)[s.c1_ids[j]] = im[j];
    }
    return out;
}

bool in_phi_image(const ChordDiagram& d) { return component_count(d) == 2 && is_indecomposable(d); }

ChordDiagram phi_inv(const ChordDiagram& d, std::vector<int>* chord_map) {
    if (!in_phi_image(d))
        throw std::invalid_argument("phi_inv: need an indecomposable diagram with two components");
    auto comp = components(d);
    auto idx = d.chord_index();
    int lo = -1, hi = -1;
    for (int pos = 0; pos < d.endpoints(); ++pos)
        if (comp[idx[pos]] != comp[0]) {
            if (lo < 0) lo = pos;
            hi = pos;
        }
    if (hi - lo + 1 != 2 * (d.size() - static_cast<int>(std::count(comp.begin(), comp.end(), comp[0]))))
        throw std::invalid_argument("phi_inv: inner component is not contiguous");
    return pull_to_front(d, lo, chord_map);
}

ChordDiagram Seed::diagram() const {
    return assemble_root(ChordDiagram::single_chord(), {{left, right}});
}

Seed Seed::from_diagram(const ChordDiagram& d) {
    if (d.empty()) throw std::invalid_argument("seed: empty diagram");
    if (root_component(d).size() != 1) throw std::invalid_argument("seed: root chord must cross nothing");
    Dangling g = dangling(d, 0);
    return {g.left, g.right};
}

std::vector<Seed> all_seeds(int n) {
    std::vector<Seed> out;
    for (int a = 0; a <= n - 1; ++a) {
        auto lefts = all_diagrams(a), rights = all_diagrams(n - 1 - a);
        for (const auto& l : lefts)
            for (const auto& r : rights) out.push_back({l, r});
    }
    return out;
}

int ZTree::label_count() const {
    int c = 0;
    for (const auto& v : vertices) c += static_cast<int>(v.stack.size());
    return c;
}

std::string ZTree::serialize() const {
    std::function<std::string(int)> rec = [&](int id) {
        const ZVertex& v = vertices[id];
        std::string s = "(";
        for (std::size_t i = 0; i < v.stack.size(); ++i) s += (i ? "." : "") + std::to_string(v.stack[i]);
        if (!v.structure.empty()) {
            s += " [" + v.structure.literal() + "]";
            for (int c : v.children) s += " " + rec(c);
        }
        return s + ")";
    };
    return vertices.empty() ? "()" : rec(0);
}

std::string validate_ztree(const ZTree& t) {
    if (t.vertices.empty()) return "no vertices";
    std::vector<int> parents(t.vertices.size(), 0);
    for (std::size_t id = 0; id < t.vertices.size(); ++id) {
        const ZVertex& v = t.vertices[id];
        if (v.stack.empty()) return "empty stack at vertex " + std::to_string(id);
        if (static_cast<int>(v.children.size()) != v.structure.size())
            return "structure size differs from child count at vertex " + std::to_string(id);
        if (!v.structure.empty() && component_count(v.structure) > 2)
            return "structure with more than two components at vertex " + std::to_string(id);
        for (int c : v.children) {
            if (c <= 0 || c >= static_cast<int>(t.vertices.size())) return "bad child index";
            ++parents[c];
        }
    }
    for (std::size_t id = 1; id < parents.size(); ++id)
        if (parents[id] != 1) return "vertex " + std::to_string(id) + " is not attached exactly once";
    std::vector<int> labels;
    for (const auto& v : t.vertices) labels.insert(labels.end(), v.stack.begin(), v.stack.end());
    std::sort(labels.begin(), labels.end());
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] != static_cast<int>(i)) return "labels are not 0..n-1";
    return {};
}

namespace {

struct Item {
    int vertex;
    ChordDiagram left, right;
    std::vector<int> left_labels, right_labels;
};

std::vector<int> relabel(const std::vector<int>& labels, const std::vector<int>& ids) {
    std::vector<int> out;
    out.reserve(ids.size());
    for (int i : ids) out.push_back(labels[i]);
    return out;
}

}  // namespace

ZTree theta(const Seed& seed) {
    ZTree t;
    ChordDiagram d = seed.diagram();
    Dangling g0 = dangling(d, 0);
    t.vertices.push_back({{0}, {}, {}});
    std::deque<Item> queue;
    queue.push_back({0, g0.left, g0.right, g0.left_chords, g0.right_chords});

    auto add_children = [&](int v, const std::vector<std::pair<const ChordDiagram*, int>>& chords,
                            const std::vector<const std::vector<int>*>& labels, const std::vector<int>& slot) {
        for (std::size_t i = 0; i < chords.size(); ++i) {
            const ChordDiagram& host = *chords[i].first;
            int c = chords[i].second;
            Dangling g = dangling(host, c);
            int w = static_cast<int>(t.vertices.size());
            t.vertices.push_back({{(*labels[i])[c]}, {}, {}});
            t.vertices[v].children[slot[i]] = w;
            queue.push_back({w, g.left, g.right, relabel(*labels[i], g.left_chords),
                             relabel(*labels[i], g.right_chords)});
        }
    };

    while (!queue.empty()) {
        Item it = std::move(queue.front());
        queue.pop_front();
        const int v = it.vertex;
        const bool l = !it.left.empty(), r = !it.right.empty();
        if (!l && !r) continue;
        std::vector<std::pair<const ChordDiagram*, int>> chords;
        std::vector<const std::vector<int>*> labels;
        std::vector<int> slot;
        if (!l) {
            auto rc = root_component(it.right);
            t.vertices[v].structure = induced(it.right, rc);
            for (std::size_t i = 0; i < rc.size(); ++i) {
                chords.push_back({&it.right, rc[i]});
                labels.push_back(&it.right_labels);
                slot.push_back(static_cast<int>(i));
            }
        } else if (r) {
            auto rl = root_component(it.left), rr = root_component(it.right);
            t.vertices[v].structure = concat(induced(it.left, rl), induced(it.right, rr));
            int s = 0;
            for (int c : rl) {
                chords.push_back({&it.left, c});
                labels.push_back(&it.left_labels);
                slot.push_back(s++);
            }
            for (int c : rr) {
                chords.push_back({&it.right, c});
                labels.push_back(&it.right_labels);
                slot.push_back(s++);
            }
        } else {
            auto rl = root_component(it.left);
            if (rl.size() == 1) {
                // the vertex absorbs the single chord as a new stack entry
                const int c = rl[0];
                t.vertices[v].stack.push_back(it.left_labels[c]);
                Dangling g = dangling(it.left, c);
                queue.push_back({v, g.left, g.right, relabel(it.left_labels, g.left_chords),
                                 relabel(it.left_labels, g.right_chords)});
                continue;
            }
            std::vector<int> map;
            t.vertices[v].structure = phi(induced(it.left, rl), &map);
            for (std::size_t i = 0; i < rl.size(); ++i) {
                chords.push_back({&it.left, rl[i]});
                labels.push_back(&it.left_labels);
                slot.push_back(map[i]);
            }
        }
        t.vertices[v].children.assign(chords.size(), -1);
        add_children(v, chords, labels, slot);
    }
    return t;
}

namespace {

using Pair = std::pair<ChordDiagram, ChordDiagram>;

Pair danglings_of(const ZTree& t, int v, std::size_t p) {
    const ZVertex& z = t.vertices.at(v);
    if (p + 1 < z.stack.size()) {
        Pair next = danglings_of(t, v, p + 1);
        return {Seed{next.first, next.second}.diagram(), ChordDiagram()};
    }
    const ChordDiagram& s = z.structure;
    if (s.empty()) return {};
    std::vector<Pair> kids;
    for (int w : z.children) kids.push_back(danglings_of(t, w, 0));
    int count = 0;
    auto comp = components(s, &count);
    if (count == 1) return {ChordDiagram(), assemble_root(s, kids)};
    if (count != 2) throw std::invalid_argument("theta_inv: structure with more than two components");
    if (is_indecomposable(s)) {
        std::vector<int> map;
        ChordDiagram core = phi_inv(s, &map);
        std::vector<Pair> moved(kids.size());
        for (std::size_t j = 0; j < kids.size(); ++j) moved[map[j]] = kids[j];
        return {assemble_root(core, moved), ChordDiagram()};
    }
    std::vector<int> first, second;
    for (int c = 0; c < s.size(); ++c) (comp[c] == comp[0] ? first : second).push_back(c);
    std::vector<Pair> kf, ks;
    for (int c : first) kf.push_back(kids[c]);
    for (int c : second) ks.push_back(kids[c]);
    return {assemble_root(induced(s, first), kf), assemble_root(induced(s, second), ks)};
}

}  // namespace

Seed theta_inv(const ZTree& t) {
    std::string err = validate_ztree(t);
    if (!err.empty()) throw std::invalid_argument("theta_inv: " + err);
    Pair p = danglings_of(t, 0, 0);
    return {p.first, p.second};
}

}  // namespace chordlab
