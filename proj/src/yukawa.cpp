#include "chordlab/yukawa.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

#include "chordlab/bijections.hpp"

namespace chordlab {

namespace {

using Edge = std::pair<int, int>;

// Bridges of the multigraph on vertices 0..n-1 (edge ids index `edges`).
std::vector<int> find_bridges(int n, const std::vector<Edge>& edges) {
    std::vector<std::vector<std::pair<int, int>>> adj(n);
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
        adj[edges[e].first].push_back({edges[e].second, e});
        adj[edges[e].second].push_back({edges[e].first, e});
    }
    std::vector<int> tin(n, -1), low(n, 0), out;
    int timer = 0;
    auto dfs = [&](auto&& self, int u, int via) -> void {
        tin[u] = low[u] = timer++;
        for (auto [to, e] : adj[u]) {
            if (e == via) continue;
            if (tin[to] >= 0) {
                low[u] = std::min(low[u], tin[to]);
            } else {
                self(self, to, e);
                low[u] = std::min(low[u], low[to]);
                if (low[to] > tin[u]) out.push_back(e);
            }
        }
    };
    for (int v = 0; v < n; ++v)
        if (tin[v] < 0) dfs(dfs, v, -1);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> component_ids(int n, const std::vector<Edge>& edges, int* count) {
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    for (auto [a, b] : edges) parent[find(a)] = find(b);
    std::vector<int> id(n, -1), root_id(n, -1);
    int c = 0;
    for (int v = 0; v < n; ++v) {
        int r = find(v);
        if (root_id[r] < 0) root_id[r] = c++;
        id[v] = root_id[r];
    }
    if (count) *count = c;
    return id;
}

// Fermion and boson edges among vertices in `keep`; fermion self-loops and
// legs are dropped, as are edges leaving `keep`.
std::vector<Edge> graph_edges(const std::vector<int>& next, const std::vector<int>& boson,
                              const std::vector<bool>& keep) {
    std::vector<Edge> e;
    const int n = static_cast<int>(next.size());
    for (int v = 0; v < n; ++v)
        if (keep[v] && next[v] != v && keep[next[v]]) e.push_back({v, next[v]});
    for (int v = 0; v < n; ++v)
        if (keep[v] && boson[v] > v && keep[boson[v]]) e.push_back({v, boson[v]});
    return e;
}

// Connected and bridgeless on the kept vertices.
bool two_edge_connected(const std::vector<Edge>& edges, const std::vector<bool>& keep) {
    const int n = static_cast<int>(keep.size());
    int count = 0;
    auto id = component_ids(n, edges, &count);
    int comp = -1;
    for (int v = 0; v < n; ++v) {
        if (!keep[v]) continue;
        if (comp < 0) comp = id[v];
        if (id[v] != comp) return false;
    }
    return find_bridges(n, edges).empty();
}

// Sub-tadpole on `verts` (global ids) with the given arrays, canonicalised.
// to_global receives canonical vertex -> global id.
Tadpole extract(const std::vector<int>& next, const std::vector<int>& boson, const std::vector<int>& verts,
                std::vector<int>* to_global) {
    std::vector<int> local(next.size(), -1);
    for (int i = 0; i < static_cast<int>(verts.size()); ++i) local[verts[i]] = i;
    Tadpole t;
    for (int v : verts) {
        if (local[next[v]] < 0) throw std::logic_error("psi_inv: fermion loop leaves the part");
        t.next.push_back(local[next[v]]);
        if (boson[v] >= 0 && local[boson[v]] < 0) throw std::logic_error("psi_inv: boson leaves the part");
        t.boson.push_back(boson[v] < 0 ? -1 : local[boson[v]]);
    }
    std::string err = validate_tadpole(t);
    if (!err.empty()) throw std::logic_error("psi_inv: malformed part: " + err);
    std::vector<int> o2n;
    Tadpole c = canonical(t, &o2n);
    to_global->assign(verts.size(), -1);
    for (int i = 0; i < static_cast<int>(verts.size()); ++i) (*to_global)[o2n[i]] = verts[i];
    return c;
}

}  // namespace

int Tadpole::leg() const {
    for (int v = 0; v < vertex_count(); ++v)
        if (boson[v] < 0) return v;
    throw std::invalid_argument("tadpole has no leg");
}

int Tadpole::prev(int v) const {
    for (int u = 0; u < vertex_count(); ++u)
        if (next[u] == v) return u;
    throw std::invalid_argument("tadpole: next is not a permutation");
}

Tadpole Tadpole::x() { return Tadpole{{0}, {-1}}; }

std::string validate_tadpole(const Tadpole& t) {
    const int V = t.vertex_count();
    if (V == 0 || V % 2 == 0) return "vertex count must be odd";
    if (static_cast<int>(t.boson.size()) != V) return "array sizes differ";
    std::vector<int> seen(V, 0);
    for (int v = 0; v < V; ++v) {
        if (t.next[v] < 0 || t.next[v] >= V) return "successor out of range";
        if (seen[t.next[v]]++) return "successor map is not a permutation";
    }
    int legs = 0;
    for (int v = 0; v < V; ++v) {
        int b = t.boson[v];
        if (b == -1) {
            ++legs;
            continue;
        }
        if (b < 0 || b >= V || b == v || t.boson[b] != v) return "bosons are not a matching";
    }
    if (legs != 1) return "exactly one leg vertex required";
    return "";
}

bool is_1pi(const Tadpole& t) {
    if (!validate_tadpole(t).empty()) return false;
    std::vector<bool> keep(t.vertex_count(), true);
    return two_edge_connected(graph_edges(t.next, t.boson, keep), keep);
}

Tadpole canonical(const Tadpole& t, std::vector<int>* old_to_new) {
    const int V = t.vertex_count();
    std::vector<int> label(V, -1);
    std::queue<int> q;
    int counter = 0;
    auto visit = [&](int v) {
        if (v >= 0 && label[v] < 0) {
            label[v] = counter++;
            q.push(v);
        }
    };
    visit(t.leg());
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        visit(t.next[v]);
        visit(t.boson[v]);
    }
    if (counter != V) throw std::invalid_argument("canonical: tadpole is not connected");
    Tadpole c{std::vector<int>(V), std::vector<int>(V)};
    for (int v = 0; v < V; ++v) {
        c.next[label[v]] = label[t.next[v]];
        c.boson[label[v]] = t.boson[v] < 0 ? -1 : label[t.boson[v]];
    }
    if (old_to_new) *old_to_new = label;
    return c;
}

std::string Tadpole::literal() const {
    std::ostringstream os;
    os << "loops: ";
    std::vector<bool> done(vertex_count(), false);
    for (int v = 0; v < vertex_count(); ++v) {
        if (done[v]) continue;
        os << '(';
        int u = v;
        bool first = true;
        do {
            os << (first ? "" : " ") << u + 1;
            first = false;
            done[u] = true;
            u = next[u];
        } while (u != v);
        os << ')';
    }
    os << " ; bosons: ";
    bool first = true;
    for (int v = 0; v < vertex_count(); ++v)
        if (boson[v] > v) {
            os << (first ? "" : ", ") << v + 1 << '-' << boson[v] + 1;
            first = false;
        }
    os << " ; leg: " << leg() + 1;
    return os.str();
}

Tadpole Tadpole::parse(const std::string& text) {
    auto fail = [&](const std::string& why) {
        throw std::invalid_argument("bad tadpole literal '" + text + "': " + why);
    };
    auto field = [&](const std::string& key) {
        auto p = text.find(key + ":");
        if (p == std::string::npos) fail("missing " + key);
        auto e = text.find(';', p);
        return text.substr(p + key.size() + 1, e == std::string::npos ? std::string::npos : e - p - key.size() - 1);
    };
    std::vector<std::vector<int>> loops;
    {
        std::string s = field("loops");
        std::size_t i = 0;
        while ((i = s.find('(', i)) != std::string::npos) {
            auto j = s.find(')', i);
            if (j == std::string::npos) fail("unclosed loop");
            std::istringstream in(s.substr(i + 1, j - i - 1));
            std::vector<int> loop;
            int v;
            while (in >> v) loop.push_back(v - 1);
            if (loop.empty()) fail("empty loop");
            loops.push_back(loop);
            i = j + 1;
        }
    }
    int V = 0;
    for (auto& l : loops) V += static_cast<int>(l.size());
    Tadpole t{std::vector<int>(V, -2), std::vector<int>(V, -1)};
    for (auto& l : loops)
        for (std::size_t k = 0; k < l.size(); ++k) {
            int v = l[k];
            if (v < 0 || v >= V || t.next[v] != -2) fail("vertices must be 1..V, each once");
            t.next[v] = l[(k + 1) % l.size()];
        }
    {
        std::string s = field("bosons");
        std::replace(s.begin(), s.end(), ',', ' ');
        std::replace(s.begin(), s.end(), '-', ' ');
        std::istringstream in(s);
        int a, b;
        while (in >> a >> b) {
            if (a < 1 || a > V || b < 1 || b > V) fail("boson end out of range");
            t.boson[a - 1] = b - 1;
            t.boson[b - 1] = a - 1;
        }
    }
    int leg = 0;
    if (!(std::istringstream(field("leg")) >> leg) || leg < 1 || leg > V) fail("bad leg");
    if (t.boson[leg - 1] != -1) fail("leg vertex carries a boson");
    std::string err = validate_tadpole(t);
    if (!err.empty()) fail(err);
    return t;
}

std::vector<Tadpole> enumerate_tadpoles(int loops, bool allow_five) {
    if (loops < 1) throw std::invalid_argument("enumerate_tadpoles: loops must be positive");
    if (loops > kMaxTadpoleLoops && !(allow_five && loops == 5))
        throw std::invalid_argument("enumerate_tadpoles: loops above the guard");
    const int V = 2 * loops - 1;
    std::set<Tadpole> found;
    std::vector<int> boson(V, -1);
    std::vector<std::vector<int>> matchings;
    auto match = [&](auto&& self) -> void {
        int a = -1;
        for (int v = 1; v < V; ++v)
            if (boson[v] < 0) {
                a = v;
                break;
            }
        if (a < 0) {
            matchings.push_back(boson);
            return;
        }
        for (int b = a + 1; b < V; ++b) {
            if (boson[b] >= 0) continue;
            boson[a] = b;
            boson[b] = a;
            self(self);
            boson[a] = boson[b] = -1;
        }
    };
    match(match);
    std::vector<int> perm(V);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        for (const auto& m : matchings) {
            Tadpole t{perm, m};
            if (is_1pi(t)) found.insert(canonical(t));
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return {found.begin(), found.end()};
}

PsiResult psi(const Tadpole& t1, const Tadpole& t2, int d) {
    for (const Tadpole* t : {&t1, &t2}) {
        std::string err = validate_tadpole(*t);
        if (!err.empty()) throw std::invalid_argument("psi: " + err);
    }
    const int V1 = t1.vertex_count(), V2 = t2.vertex_count();
    if (d != kLegEnd && (d < 0 || d >= V2)) throw std::invalid_argument("psi: d is not a vertex of T2");
    PsiResult r;
    if (d == kLegEnd) {
        r.is_pair = true;
        r.t1 = t1;
        r.t2 = t2;
        return r;
    }
    const int V = V1 + V2 + 1, U = V1 + V2;
    std::vector<int> next(V), boson(V);
    for (int v = 0; v < V1; ++v) {
        next[v] = t1.next[v];
        boson[v] = t1.boson[v];
    }
    for (int v = 0; v < V2; ++v) {
        next[V1 + v] = V1 + t2.next[v];
        boson[V1 + v] = t2.boson[v] < 0 ? -1 : V1 + t2.boson[v];
    }
    const int v1 = t1.leg(), v2 = V1 + t2.leg(), dd = V1 + d;
    boson[U] = v2;
    boson[v2] = U;
    if (t1.is_x()) {
        const int old = next[dd];
        next[dd] = v1;
        next[v1] = U;
        next[U] = old;
    } else {
        const int w = next[v1];
        next[v1] = U;
        next[U] = next[w];
        next[w] = next[dd];
        next[dd] = w;
    }
    r.t = canonical(Tadpole{next, boson});
    return r;
}

PsiSplit psi_inv(const Tadpole& t) {
    if (t.is_x()) throw std::invalid_argument("psi_inv: X does not decompose");
    if (!is_1pi(t)) throw std::invalid_argument("psi_inv: input is not a 1PI tadpole");
    const int V = t.vertex_count();
    const int vT = t.leg(), a = t.next[vT], v2 = t.boson[a];
    std::vector<int> next = t.next, boson = t.boson;
    next[vT] = next[a];
    boson[v2] = -1;
    std::vector<bool> alive(V, true);
    alive[a] = false;

    PsiSplit s;
    auto prev_in = [&](int v, const std::vector<bool>& keep) {
        for (int u = 0; u < V; ++u)
            if (keep[u] && u != v && next[u] == v) return u;
        throw std::logic_error("psi_inv: vertex has no predecessor");
    };

    if (two_edge_connected(graph_edges(next, boson, alive), alive)) {
        s.first_case = true;
        const int d = prev_in(vT, alive);
        std::vector<int> verts;
        for (int v = 0; v < V; ++v)
            if (alive[v] && v != vT) verts.push_back(v);
        next[d] = next[vT];
        s.t2 = extract(next, boson, verts, &s.t2_to_t);
        s.t1 = Tadpole::x();
        s.t1_to_t = {vT};
        for (int i = 0; i < s.t2.vertex_count(); ++i)
            if (s.t2_to_t[i] == d) s.d = i;
        return s;
    }

    std::vector<bool> G = alive;
    Edge b{-1, -1};
    while (true) {
        auto edges = graph_edges(next, boson, G);
        auto br = find_bridges(V, edges);
        if (br.empty()) break;
        b = edges[br.front()];
        edges.erase(edges.begin() + br.front());
        auto id = component_ids(V, edges, nullptr);
        for (int v = 0; v < V; ++v) G[v] = G[v] && id[v] == id[v2];
        ++s.bridge_steps;
    }
    if (s.bridge_steps == 0) throw std::invalid_argument("psi_inv: no bridge to chase");
    const int w = G[b.first] ? b.first : b.second;
    const int xo = w == b.first ? b.second : b.first;
    if (boson[w] != xo) throw std::logic_error("psi_inv: final bridge is not a boson edge");
    const int d = prev_in(w, G);
    std::vector<int> v2s, v1s;
    for (int v = 0; v < V; ++v) {
        if (!alive[v]) continue;
        if (G[v] && v != w) v2s.push_back(v);
        if (!G[v] || v == w) v1s.push_back(v);
    }
    std::vector<int> next2 = next;
    next2[d] = next[w];
    s.t2 = extract(next2, boson, v2s, &s.t2_to_t);
    std::vector<int> next1 = next;
    next1[w] = next[vT];
    next1[vT] = w;
    s.t1 = extract(next1, boson, v1s, &s.t1_to_t);
    for (int i = 0; i < s.t2.vertex_count(); ++i)
        if (s.t2_to_t[i] == d) s.d = i;
    return s;
}

std::vector<int> psi_order(const Tadpole& t) {
    if (t.is_x()) return {1};
    PsiSplit s = psi_inv(t);
    const auto p1 = psi_order(s.t1), p2 = psi_order(s.t2);
    const int f = p2[s.d], M = s.t1.vertex_count();
    const int vT = t.leg(), a = t.next[vT];
    std::vector<int> r(t.vertex_count(), 0);
    r[vT] = 1;
    for (int u = 0; u < s.t2.vertex_count(); ++u) {
        const int e = s.t2_to_t[u];
        if (u == s.d)
            r[e] = f + 1;
        else if (p2[u] < f)
            r[e] = p2[u] + 1;
        else
            r[e] = p2[u] + (s.first_case ? 2 : M + 1);
    }
    if (s.first_case) {
        r[a] = f + 2;
        return r;
    }
    const int l1 = s.t1.leg(), w1 = s.t1.next[l1];
    for (int u = 0; u < s.t1.vertex_count(); ++u) {
        if (u == l1) continue;
        if (u == w1) {
            r[a] = p1[w1] + f;
            r[s.t1_to_t[u]] = M + f + 1;
        } else {
            r[s.t1_to_t[u]] = p1[u] + f;
        }
    }
    return r;
}

ChordDiagram lambda_bij(const Tadpole& t) {
    if (t.is_x()) {
        if (!is_1pi(t)) throw std::invalid_argument("lambda_bij: malformed X");
        return ChordDiagram::single_chord();
    }
    PsiSplit s = psi_inv(t);
    const int k = psi_order(s.t2)[s.d];
    return nabla_inv(RootShareTriple{lambda_bij(s.t1), lambda_bij(s.t2), k});
}

Tadpole lambda_inv(const ChordDiagram& c) {
    if (c.size() == 1) return Tadpole::x();
    RootShareTriple r = nabla(c);
    Tadpole t1 = lambda_inv(r.c1), t2 = lambda_inv(r.c2);
    const auto p = psi_order(t2);
    auto it = std::find(p.begin(), p.end(), r.k);
    if (it == p.end()) throw std::logic_error("lambda_inv: interval index outside the order");
    return psi(t1, t2, static_cast<int>(it - p.begin())).t;
}

int QQEDVertexGraph::leg() const {
    for (int v = 0; v < static_cast<int>(photon.size()); ++v)
        if (photon[v] < 0) return v;
    throw std::invalid_argument("vertex graph has no external photon");
}

std::string validate_qqed(const QQEDVertexGraph& g) {
    const int n = static_cast<int>(g.photon.size());
    if (n % 2 == 0) return "fermion path needs an odd number of vertices";
    int legs = 0;
    for (int v = 0; v < n; ++v) {
        int p = g.photon[v];
        if (p == -1) {
            ++legs;
            continue;
        }
        if (p < 0 || p >= n || p == v || g.photon[p] != v) return "photons are not a matching";
    }
    return legs == 1 ? "" : "exactly one external photon required";
}

void enumerate_qqed(int loops, const std::function<void(const QQEDVertexGraph&)>& visit) {
    if (loops < 0) throw std::invalid_argument("enumerate_qqed: negative loop number");
    const int n = 2 * loops + 1;
    QQEDVertexGraph g{std::vector<int>(n, -2)};
    auto rec = [&](auto&& self) -> void {
        int a = -1;
        for (int v = 0; v < n; ++v)
            if (g.photon[v] == -2) {
                a = v;
                break;
            }
        if (a < 0) {
            visit(g);
            return;
        }
        for (int b = a + 1; b < n; ++b) {
            if (g.photon[b] != -2) continue;
            g.photon[a] = b;
            g.photon[b] = a;
            self(self);
            g.photon[a] = g.photon[b] = -2;
        }
    };
    for (int leg = 0; leg < n; ++leg) {
        g.photon[leg] = -1;
        rec(rec);
        g.photon[leg] = -2;
    }
}

ChordDiagram qqed_chord(const QQEDVertexGraph& g) {
    std::string err = validate_qqed(g);
    if (!err.empty()) throw std::invalid_argument("qqed_chord: " + err);
    const int n = static_cast<int>(g.photon.size());
    std::vector<int> p(n + 1);
    const int leg = g.leg();
    p[0] = leg + 1;
    for (int v = 0; v < n; ++v) p[v + 1] = v == leg ? 0 : g.photon[v] + 1;
    return ChordDiagram(p);
}

QQEDVertexGraph qqed_from_chord(const ChordDiagram& c) {
    if (c.empty()) throw std::invalid_argument("qqed_from_chord: empty diagram");
    const int n = c.endpoints() - 1;
    QQEDVertexGraph g{std::vector<int>(n)};
    for (int v = 0; v < n; ++v) g.photon[v] = c.partner(v + 1) == 0 ? -1 : c.partner(v + 1) - 1;
    return g;
}

static std::vector<Edge> qqed_edges(const QQEDVertexGraph& g, int lo, int hi) {
    std::vector<Edge> e;
    for (int v = lo; v < hi; ++v) e.push_back({v, v + 1});
    for (int v = lo; v <= hi; ++v)
        if (g.photon[v] > v && g.photon[v] <= hi) e.push_back({v, g.photon[v]});
    return e;
}

bool qqed_is_1pi(const QQEDVertexGraph& g) {
    if (!validate_qqed(g).empty()) return false;
    const int n = static_cast<int>(g.photon.size());
    return find_bridges(n, qqed_edges(g, 0, n - 1)).empty();
}

bool qqed_primitive(const QQEDVertexGraph& g) {
    if (!qqed_is_1pi(g)) return false;
    const int n = static_cast<int>(g.photon.size()), leg = g.leg();
    for (int lo = 0; lo < n; ++lo)
        for (int hi = lo + 1; hi < n; ++hi) {
            if (lo == 0 && hi == n - 1) continue;
            auto edges = qqed_edges(g, lo, hi);
            if (static_cast<int>(edges.size()) == hi - lo) continue;  // no internal photon
            if (!find_bridges(n, edges).empty()) continue;
            int photon_legs = (lo <= leg && leg <= hi) ? 1 : 0;
            for (int v = lo; v <= hi; ++v)
                if (g.photon[v] >= 0 && (g.photon[v] < lo || g.photon[v] > hi)) ++photon_legs;
            if (photon_legs <= 1) return false;
        }
    return true;
}

namespace {

Series vacuum_series(int o) {
    Series C = series_C(o + 1);
    return Rational(1, 2) * shift_down(C * C, 1);
}
Series u01_series(int o) {
    Series C = series_C(o);
    return 2 * theta_op(C) - C;
}
Series u20_series(int o) { return shift_up(u01_series(o - 1), 1); }
Series u11_series(int o) { return shift_up(series_C2_over_t2_at_u(o - 1), 1); }

constexpr int kGreenHbar0Convention = -1;

}  // namespace

std::vector<IdentityReport> green_identities(int order) {
    if (order < 2 || order > 32) throw std::invalid_argument("green_identities: order must be in 2..32");
    const int N = order;
    Series x = Series::x(N), C = series_C(N), V = vacuum_series(N);
    Series U01 = u01_series(N), U20 = u20_series(N), U11 = u11_series(N);
    Series W = series_C2_over_t2_at_u(N);
    std::vector<IdentityReport> r;
    r.push_back(compare_series("vacuum_derivative", C - x, shift_up(2 * derive(V), 2).truncate(N)));
    r.push_back(compare_series("tadpole_quadratic", 2 * (x * C * derive(series_C(N + 1))),
                               C * C + C - x));
    r.push_back(compare_series("tadpole_from_fermion_edge", C, x / (1 - U01)));
    r.push_back(compare_series("leg_and_fermion_edge", U20, C * C * W));
    r.push_back(compare_series("vertex_from_fermion_edge", W, 2 * theta_op(U01) - U01 + 1));
    r.push_back(compare_series("vertex_with_leg", U11, x * W));
    return r;
}

const std::vector<GreenRow>& green_rows() {
    auto q = [](std::initializer_list<Rational> v) { return std::vector<Rational>(v); };
    static const std::vector<GreenRow> rows{
        {"vacuum", q({0, 0, Rational(1, 2), 1, Rational(9, 2), 31, 283}), -1, false, vacuum_series},
        {"tadpole", q({0, 1, 1, 4, 27, 248, 2830}), 0, false, series_C},
        {"two boson legs", q({-1, 1, 3, 20, 189, 2232, 31130}), 1, true, u20_series},
        {"fermion propagator", q({-1, 1, 3, 20, 189, 2232, 31130}), 0, true, u01_series},
        {"boson-fermion vertex", q({1, 1, 9, 100, 1323, 20088, 342430}), 1, false, u11_series},
    };
    return rows;
}

std::string check_green_row(const GreenRow& row) {
    const int last = static_cast<int>(row.expected.size()) - 1;
    Series s = row.compute(last + std::max(row.shift, 0) + 1);
    for (int k = 0; k <= last; ++k) {
        Rational got;
        if (k == 0 && row.hbar0_convention)
            got = kGreenHbar0Convention;
        else if (k + row.shift >= 0)
            got = s.coeff_or_zero(k + row.shift);
        if (got != row.expected[k])
            return row.label + ": hbar^" + std::to_string(k) + " expected " + to_string(row.expected[k]) +
                   ", got " + to_string(got);
    }
    return "";
}

}  // namespace chordlab
