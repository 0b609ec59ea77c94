#include "chordlab/chord.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace chordlab {

namespace {

// Build a diagram from a sequence in which every chord id occurs twice.
// id_to_chord (optional) receives the resulting chord index of each id.
ChordDiagram from_tokens(const std::vector<int>& tokens, std::vector<int>* id_to_chord = nullptr) {
    int len = static_cast<int>(tokens.size());
    int maxid = -1;
    for (int t : tokens) maxid = std::max(maxid, t);
    std::vector<int> first(maxid + 1, -1), p(len, -1);
    for (int i = 0; i < len; ++i) {
        int t = tokens[i];
        if (first[t] < 0) {
            first[t] = i;
        } else {
            p[i] = first[t];
            p[first[t]] = i;
        }
    }
    ChordDiagram d(p);
    if (id_to_chord) {
        id_to_chord->assign(maxid + 1, -1);
        std::vector<int> ci = d.chord_index();
        for (int t = 0; t <= maxid; ++t)
            if (first[t] >= 0) (*id_to_chord)[t] = ci[first[t]];
    }
    return d;
}

std::vector<int> tokens_of(const ChordDiagram& d, int offset) {
    std::vector<int> ci = d.chord_index();
    for (int& c : ci) c += offset;
    return ci;
}

}  // namespace

ChordDiagram::ChordDiagram(std::vector<int> partner) : p_(std::move(partner)) {
    int m = static_cast<int>(p_.size());
    if (m % 2) throw std::invalid_argument("chord diagram needs an even number of endpoints");
    for (int i = 0; i < m; ++i) {
        int q = p_[i];
        if (q < 0 || q >= m || q == i || p_[q] != i)
            throw std::invalid_argument("partner list is not a fixed-point-free involution");
    }
}

ChordDiagram ChordDiagram::from_chords(const std::vector<std::pair<int, int>>& chords) {
    std::vector<int> p(chords.size() * 2, -1);
    for (auto [a, b] : chords) {
        if (a < 0 || b < 0 || a >= static_cast<int>(p.size()) || b >= static_cast<int>(p.size()))
            throw std::invalid_argument("chord endpoint out of range");
        if (p[a] != -1 || p[b] != -1) throw std::invalid_argument("endpoint used twice");
        p[a] = b;
        p[b] = a;
    }
    return ChordDiagram(p);
}

std::vector<std::pair<int, int>> ChordDiagram::chords() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(p_.size() / 2);
    for (int i = 0; i < endpoints(); ++i)
        if (p_[i] > i) out.emplace_back(i, p_[i]);
    return out;
}

std::vector<int> ChordDiagram::chord_index() const {
    std::vector<int> ci(p_.size());
    int c = 0;
    for (int i = 0; i < endpoints(); ++i) {
        if (p_[i] > i)
            ci[i] = c++;
        else
            ci[i] = ci[p_[i]];
    }
    return ci;
}

std::string ChordDiagram::literal() const {
    std::ostringstream os;
    os << size() << ":";
    for (int q : p_) os << ' ' << q + 1;
    return os.str();
}

ChordDiagram ChordDiagram::parse(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("diagram literal needs 'n:'");
    int n;
    try {
        n = std::stoi(text.substr(0, colon));
    } catch (const std::exception&) {
        throw std::invalid_argument("bad chord count in diagram literal");
    }
    std::istringstream is(text.substr(colon + 1));
    std::vector<int> p;
    std::string tok;
    while (is >> tok) {
        try {
            p.push_back(std::stoi(tok) - 1);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad partner entry: " + tok);
        }
    }
    if (n < 0 || static_cast<int>(p.size()) != 2 * n)
        throw std::invalid_argument("diagram literal has wrong number of partners");
    return ChordDiagram(p);
}

void enumerate_diagrams(int n, const std::function<void(const ChordDiagram&)>& visit, int guard) {
    if (n < 0) throw std::invalid_argument("negative chord count");
    if (n > guard) throw std::invalid_argument("chord count exceeds enumeration guard");
    int m = 2 * n;
    std::vector<int> p(m, -1);
    std::function<void(int)> rec = [&](int placed) {
        if (placed == n) {
            visit(ChordDiagram(p));
            return;
        }
        int a = 0;
        while (p[a] != -1) ++a;
        for (int b = a + 1; b < m; ++b) {
            if (p[b] != -1) continue;
            p[a] = b;
            p[b] = a;
            rec(placed + 1);
            p[a] = p[b] = -1;
        }
    };
    rec(0);
}

std::vector<ChordDiagram> all_diagrams(int n, int guard) {
    std::vector<ChordDiagram> out;
    enumerate_diagrams(n, [&](const ChordDiagram& d) { out.push_back(d); }, guard);
    return out;
}

bool chords_cross(const std::pair<int, int>& a, const std::pair<int, int>& b) {
    return (a.first < b.first && b.first < a.second && a.second < b.second) ||
           (b.first < a.first && a.first < b.second && b.second < a.second);
}

std::vector<std::vector<int>> intersection_graph(const ChordDiagram& d) {
    auto ch = d.chords();
    int n = static_cast<int>(ch.size());
    std::vector<std::vector<int>> adj(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (chords_cross(ch[i], ch[j])) {
                adj[i].push_back(j);
                adj[j].push_back(i);
            }
    return adj;
}

std::vector<int> components(const ChordDiagram& d, int* count) {
    auto adj = intersection_graph(d);
    int n = d.size();
    std::vector<int> comp(n, -1);
    int k = 0;
    for (int s = 0; s < n; ++s) {
        if (comp[s] != -1) continue;
        std::vector<int> stack{s};
        comp[s] = k;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int v : adj[u])
                if (comp[v] == -1) {
                    comp[v] = k;
                    stack.push_back(v);
                }
        }
        ++k;
    }
    if (count) *count = k;
    return comp;
}

int component_count(const ChordDiagram& d) {
    int k = 0;
    components(d, &k);
    return k;
}

bool is_connected(const ChordDiagram& d) { return !d.empty() && component_count(d) == 1; }

int connectivity(const ChordDiagram& d) {
    int n = d.size();
    if (n == 0) return 0;
    int m = d.endpoints();
    int best = n;
    for (int i = 0; i < m; ++i) {
        int cut = 0, full = 0;
        for (int j = i; j < m; ++j) {
            int q = d.partner(j);
            if (q >= i && q < j) {
                --cut;
                ++full;
            } else {
                ++cut;
            }
            if (full >= 1 && n - full - cut >= 1 && cut < best) best = cut;
        }
    }
    return best;
}

bool is_k_connected(const ChordDiagram& d, int k) { return connectivity(d) >= k; }

int connectivity_by_deletion(const ChordDiagram& d) {
    int n = d.size();
    if (n == 0) return 0;
    auto ch = d.chords();
    for (int k = 0; k <= n - 2; ++k) {
        // all subsets of size k via bitmask
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
            if (__builtin_popcount(mask) != k) continue;
            std::vector<int> keep;
            for (int i = 0; i < n; ++i)
                if (!(mask & (1u << i))) keep.push_back(i);
            ChordDiagram sub = induced(d, keep);
            if (component_count(sub) >= 2) return k;
        }
    }
    return n;
}

bool is_indecomposable(const ChordDiagram& d) {
    int m = d.endpoints();
    int reach = -1;
    for (int i = 0; i + 1 < m; ++i) {
        reach = std::max(reach, d.partner(i));
        if (reach == i) return false;
    }
    return true;
}

ChordDiagram induced(const ChordDiagram& d, const std::vector<int>& chord_ids, std::vector<int>* old_index) {
    std::vector<int> ci = d.chord_index();
    std::vector<char> keep(d.size(), 0);
    for (int c : chord_ids) keep.at(c) = 1;
    std::vector<int> tokens;
    for (int i = 0; i < d.endpoints(); ++i)
        if (keep[ci[i]]) tokens.push_back(ci[i]);
    if (tokens.empty()) {
        if (old_index) old_index->clear();
        return ChordDiagram();
    }
    std::vector<int> id_to_chord;
    ChordDiagram out = from_tokens(tokens, &id_to_chord);
    if (old_index) {
        old_index->assign(out.size(), -1);
        for (int id = 0; id < static_cast<int>(id_to_chord.size()); ++id)
            if (id_to_chord[id] >= 0) (*old_index)[id_to_chord[id]] = id;
    }
    return out;
}

ChordDiagram concat(const ChordDiagram& a, const ChordDiagram& b) {
    std::vector<int> p(a.partners());
    int off = a.endpoints();
    for (int q : b.partners()) p.push_back(q + off);
    return ChordDiagram(p);
}

ChordDiagram insert_at_interval(const ChordDiagram& outer, int k, const ChordDiagram& inner,
                                std::vector<int>* outer_map, std::vector<int>* inner_map) {
    if (k < 0 || k > outer.endpoints()) throw std::invalid_argument("interval index out of range");
    std::vector<int> to = tokens_of(outer, 0), ti = tokens_of(inner, outer.size());
    std::vector<int> tokens(to.begin(), to.begin() + k);
    tokens.insert(tokens.end(), ti.begin(), ti.end());
    tokens.insert(tokens.end(), to.begin() + k, to.end());
    if (tokens.empty()) return ChordDiagram();
    std::vector<int> id_to_chord;
    ChordDiagram out = from_tokens(tokens, &id_to_chord);
    if (outer_map) outer_map->assign(id_to_chord.begin(), id_to_chord.begin() + outer.size());
    if (inner_map) inner_map->assign(id_to_chord.begin() + outer.size(), id_to_chord.end());
    return out;
}

std::vector<int> root_component(const ChordDiagram& d) {
    if (d.empty()) throw std::invalid_argument("root component of the empty diagram");
    std::vector<int> comp = components(d);
    std::vector<int> out;
    for (int c = 0; c < d.size(); ++c)
        if (comp[c] == comp[0]) out.push_back(c);
    return out;
}

Dangling dangling(const ChordDiagram& d, int chord) {
    std::vector<int> rc = root_component(d);
    if (!std::binary_search(rc.begin(), rc.end(), chord))
        throw std::invalid_argument("dangling: chord is not in the root component");
    std::vector<int> ci = d.chord_index();
    std::vector<char> in_root(d.size(), 0);
    for (int c : rc) in_root[c] = 1;
    auto gap_after = [&](int pos) {
        std::vector<int> ids;
        for (int i = pos + 1; i < d.endpoints() && !in_root[ci[i]]; ++i)
            if (d.partner(i) > i) ids.push_back(ci[i]);
        return ids;
    };
    auto ch = d.chords();
    Dangling out;
    out.left_chords = gap_after(ch[chord].first);
    out.right_chords = gap_after(ch[chord].second);
    out.left = induced(d, out.left_chords);
    out.right = induced(d, out.right_chords);
    return out;
}

RootDecomposition decompose_root(const ChordDiagram& d) {
    RootDecomposition r;
    std::vector<int> rc = root_component(d);
    r.core = induced(d, rc);
    for (int c : rc) {
        Dangling g = dangling(d, c);
        r.danglings.emplace_back(g.left, g.right);
    }
    return r;
}

ChordDiagram assemble_root(const ChordDiagram& core,
                           const std::vector<std::pair<ChordDiagram, ChordDiagram>>& danglings) {
    if (static_cast<int>(danglings.size()) != core.size())
        throw std::invalid_argument("assemble_root: one dangling pair per core chord required");
    std::vector<int> ci = core.chord_index();
    std::vector<int> tokens;
    int next_id = core.size();
    for (int i = 0; i < core.endpoints(); ++i) {
        tokens.push_back(ci[i]);
        const ChordDiagram& g = core.partner(i) > i ? danglings[ci[i]].first : danglings[ci[i]].second;
        for (int t : tokens_of(g, next_id)) tokens.push_back(t);
        next_id += g.size();
    }
    if (tokens.empty()) return ChordDiagram();
    return from_tokens(tokens);
}

std::vector<Reason> reasons_and_cuts(const ChordDiagram& d) {
    std::vector<Reason> out;
    if (d.empty() || connectivity(d) != 1) return out;
    int m = d.endpoints();
    std::vector<int> ci = d.chord_index();
    for (int i = 0; i < m; ++i) {
        int cut = 0, full = 0, cut_xor = 0;
        for (int j = i; j < m; ++j) {
            int q = d.partner(j);
            if (q >= i && q < j) {
                --cut;
                ++full;
            } else {
                ++cut;
            }
            cut_xor ^= ci[j] + 1;
            if (cut == 1 && full >= 1 && j - i + 1 < m - 1) out.push_back(Reason{i, j, cut_xor - 1});
        }
    }
    return out;
}

std::vector<Reason> minimal_reasons(const std::vector<Reason>& rs) {
    std::vector<Reason> out;
    for (const auto& r : rs) {
        bool minimal = true;
        for (const auto& s : rs)
            if (!(s == r) && r.contains(s)) minimal = false;
        if (minimal) out.push_back(r);
    }
    return out;
}

std::vector<Reason> maximal_reasons(const std::vector<Reason>& rs) {
    std::vector<Reason> out;
    for (const auto& r : rs) {
        bool maximal = true;
        for (const auto& s : rs)
            if (!(s == r) && s.contains(r)) maximal = false;
        if (maximal) out.push_back(r);
    }
    return out;
}

std::vector<int> intersection_labels(const ChordDiagram& d) {
    auto ch = d.chords();
    std::vector<int> label(d.size(), 0);
    // chords in `set` are sorted by first endpoint
    std::function<int(std::vector<int>, int)> rec = [&](std::vector<int> set, int next) {
        if (set.empty()) return next;
        label[set[0]] = next++;
        std::vector<int> rest(set.begin() + 1, set.end());
        std::vector<int> comp(rest.size(), -1);
        int k = 0;
        for (size_t s = 0; s < rest.size(); ++s) {
            if (comp[s] != -1) continue;
            std::vector<size_t> st{s};
            comp[s] = k;
            while (!st.empty()) {
                size_t u = st.back();
                st.pop_back();
                for (size_t v = 0; v < rest.size(); ++v)
                    if (comp[v] == -1 && chords_cross(ch[rest[u]], ch[rest[v]])) {
                        comp[v] = k;
                        st.push_back(v);
                    }
            }
            ++k;
        }
        // component ids were assigned in order of first endpoint already
        for (int c = 0; c < k; ++c) {
            std::vector<int> part;
            for (size_t s = 0; s < rest.size(); ++s)
                if (comp[s] == c) part.push_back(rest[s]);
            next = rec(part, next);
        }
        return next;
    };
    std::vector<int> all(d.size());
    std::iota(all.begin(), all.end(), 0);
    rec(all, 1);
    return label;
}

std::vector<std::pair<int, int>> labelled_intersection_edges(const ChordDiagram& d) {
    auto lab = intersection_labels(d);
    auto adj = intersection_graph(d);
    std::vector<std::pair<int, int>> e;
    for (int u = 0; u < d.size(); ++u)
        for (int v : adj[u])
            if (lab[u] < lab[v]) e.emplace_back(lab[u], lab[v]);
    std::sort(e.begin(), e.end());
    return e;
}

ClassCounts classify_all(int n, int guard) {
    if (n < 0) throw std::invalid_argument("negative chord count");
    if (n > guard) throw std::invalid_argument("chord count exceeds enumeration guard");
    ClassCounts cc;
    if (n == 0) {
        cc.total = 1;
        cc.indecomposable = 1;
        return cc;
    }
    const int m = 2 * n;
    std::vector<int> p(m, -1);
    std::vector<int> first(n), second(n), cidx(m);
    std::vector<std::uint32_t> adj(n);
    auto leaf = [&]() {
        ++cc.total;
        int c = 0;
        for (int i = 0; i < m; ++i)
            if (p[i] > i) {
                first[c] = i;
                second[c] = p[i];
                cidx[i] = cidx[p[i]] = c;
                ++c;
            }
        for (int a = 0; a < n; ++a) adj[a] = 0;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                if (first[b] < second[a] && second[a] < second[b]) {
                    adj[a] |= 1u << b;
                    adj[b] |= 1u << a;
                }
        std::uint32_t seen = 1, frontier = 1;
        while (frontier) {
            std::uint32_t nxt = 0;
            for (std::uint32_t f = frontier; f; f &= f - 1) nxt |= adj[__builtin_ctz(f)];
            frontier = nxt & ~seen;
            seen |= nxt;
        }
        bool connected = seen == (n == 32 ? 0xffffffffu : ((1u << n) - 1));
        int reach = -1;
        bool indec = true;
        for (int i = 0; i + 1 < m; ++i) {
            reach = std::max(reach, p[i]);
            if (reach == i) {
                indec = false;
                break;
            }
        }
        if (indec) ++cc.indecomposable;
        if (!connected) return;
        ++cc.connected;
        int best = n;
        for (int i = 0; i < m && best > 1; ++i) {
            int cut = 0, full = 0;
            for (int j = i; j < m; ++j) {
                int q = p[j];
                if (q >= i && q < j) {
                    --cut;
                    ++full;
                } else {
                    ++cut;
                }
                if (full >= 1 && n - full - cut >= 1 && cut < best) best = cut;
            }
        }
        if (best >= 2)
            ++cc.two_connected;
        else
            ++cc.connectivity_one;
    };
    std::function<void(int)> rec = [&](int placed) {
        if (placed == n) {
            leaf();
            return;
        }
        int a = 0;
        while (p[a] != -1) ++a;
        for (int b = a + 1; b < m; ++b) {
            if (p[b] != -1) continue;
            p[a] = b;
            p[b] = a;
            rec(placed + 1);
            p[a] = p[b] = -1;
        }
    };
    rec(0);
    return cc;
}

}  // namespace chordlab
