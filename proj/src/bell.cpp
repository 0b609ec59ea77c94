#include "chordlab/bell.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace chordlab {

Rational binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rational(r);
}

static Rational factorial(int n) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return Rational(r);
}

namespace {

// Triangular table B[m][j] for j <= m <= rows, restricted to m - j < xs.size().
struct BellTable {
    std::vector<Rational> xs;
    std::vector<std::vector<Rational>> b;

    void grow(int rows) {
        const int L = static_cast<int>(xs.size());
        for (int m = static_cast<int>(b.size()); m <= rows; ++m) {
            std::vector<Rational> row(m + 1);
            row[0] = m == 0 ? 1 : 0;
            for (int j = 1; j <= m; ++j) {
                if (m - j + 1 > L) continue;
                Rational acc = 0;
                for (int s = 1; s <= m - j + 1; ++s) acc += binomial(m, s) * xs[s - 1] * b[m - s][j - 1];
                row[j] = acc / j;
            }
            b.push_back(std::move(row));
        }
    }
};

std::mutex g_bell_mutex;
std::map<std::vector<Rational>, std::shared_ptr<BellTable>> g_bell_cache;
constexpr std::size_t kBellCacheLimit = 256;

}  // namespace

Rational bell_partial(int n, int k, const std::vector<Rational>& xs) {
    if (n < 0 || k < 0) throw std::invalid_argument("bell_partial: negative index");
    if (k > n) return 0;
    if (k == 0) return n == 0 ? 1 : 0;
    if (static_cast<int>(xs.size()) < n - k + 1)
        throw std::invalid_argument("bell_partial: need x_1..x_" + std::to_string(n - k + 1));
    std::lock_guard<std::mutex> lock(g_bell_mutex);
    if (g_bell_cache.size() >= kBellCacheLimit && !g_bell_cache.count(xs)) g_bell_cache.clear();
    auto& slot = g_bell_cache[xs];
    if (!slot) {
        slot = std::make_shared<BellTable>();
        slot->xs = xs;
    }
    slot->grow(n);
    return slot->b[n][k];
}

Rational bell_partial_oracle(int n, int k, const std::vector<Rational>& xs) {
    if (n < 0 || k < 0) throw std::invalid_argument("bell_partial_oracle: negative index");
    if (n > 12) throw std::invalid_argument("bell_partial_oracle: n too large");
    if (n == 0) return k == 0 ? 1 : 0;
    // restricted growth strings enumerate set partitions
    std::vector<int> a(n, 0), sizes;
    Rational total = 0;
    while (true) {
        int blocks = 0;
        for (int v : a) blocks = std::max(blocks, v + 1);
        if (blocks == k) {
            sizes.assign(blocks, 0);
            for (int v : a) ++sizes[v];
            Rational term = 1;
            for (int s : sizes) {
                if (s > static_cast<int>(xs.size())) throw std::invalid_argument("bell_partial_oracle: xs too short");
                term *= xs[s - 1];
            }
            total += term;
        }
        int i = n - 1;
        while (i > 0) {
            int m = 0;
            for (int j = 0; j < i; ++j) m = std::max(m, a[j]);
            if (a[i] <= m) break;
            a[i] = 0;
            --i;
        }
        if (i == 0) break;
        ++a[i];
    }
    return total;
}

Rational faa_di_bruno(const std::vector<Rational>& f, const std::vector<Rational>& g, int n) {
    if (!g.empty() && g[0] != 0) throw std::domain_error("faa_di_bruno: g_0 must vanish");
    if (static_cast<int>(f.size()) <= n || static_cast<int>(g.size()) <= n)
        throw std::invalid_argument("faa_di_bruno: need coefficients up to n");
    std::vector<Rational> gs(g.begin() + 1, g.begin() + n + 1);
    Rational h = 0;
    for (int k = 0; k <= n; ++k) h += f[k] * bell_partial(n, k, gs);
    return h;
}

const std::vector<std::string>& bell_identity_names() {
    static const std::vector<std::string> names{"lemma1a", "lemma1b", "id1", "id2", "id3"};
    return names;
}

bool bell_identity_applicable(const std::string& which, int n, int k) {
    if (which == "lemma1a" || which == "lemma1b") return n > 0 && k > 0;
    if (which == "id1") return k > 0 && n > k;
    if (which == "id2") return n >= 0 && k >= 0;
    if (which == "id3") return k >= 0 && n >= k + 1;
    throw std::invalid_argument("unknown Bell identity: " + which);
}

static const Rational& xat(const std::vector<Rational>& xs, int s) {
    if (s < 1 || s > static_cast<int>(xs.size()))
        throw std::invalid_argument("Bell identity: x_" + std::to_string(s) + " not supplied");
    return xs[s - 1];
}

// Ordered block sums: O(m, j) = j! B_{m,j}, built by peeling one block at a time.
static Rational ordered_blocks(int n, int k, const std::vector<Rational>& xs) {
    std::vector<std::vector<Rational>> O(k + 1, std::vector<Rational>(n + 1));
    for (int m = 1; m <= n; ++m) O[1][m] = xat(xs, m);
    for (int j = 1; j < k; ++j)
        for (int m = j + 1; m <= n; ++m) {
            Rational acc = 0;
            for (int a = j; a <= m - 1; ++a) acc += binomial(m, a) * xat(xs, m - a) * O[j][a];
            O[j + 1][m] = acc;
        }
    return O[k][n];
}

Rational id3_nested_sum(int n, int k, const std::vector<Rational>& xs) {
    if (k == 0) return xat(xs, n);
    Rational total = 0;
    std::vector<int> alpha(k + 1);
    alpha[0] = n;
    // level i picks alpha_i in [k - i + 1, alpha_{i-1} - 1]
    auto rec = [&](auto&& self, int i, Rational weight) -> void {
        if (i > k) {
            total += weight * xat(xs, alpha[k]);
            return;
        }
        for (int a = k - i + 1; a <= alpha[i - 1] - 1; ++a) {
            alpha[i] = a;
            self(self, i + 1, weight * binomial(alpha[i - 1], a) * xat(xs, alpha[i - 1] - a));
        }
    };
    rec(rec, 1, Rational(1));
    return total;
}

BellSides bell_identity_sides(const std::string& which, int n, int k, const std::vector<Rational>& xs, int k2) {
    if (!bell_identity_applicable(which, n, k))
        throw std::invalid_argument(which + ": (n, k) = (" + std::to_string(n) + ", " + std::to_string(k) +
                                    ") outside the valid range");
    BellSides r;
    if (which == "lemma1a" || which == "lemma1b") {
        const bool weighted = which == "lemma1b";
        r.lhs = Rational(weighted ? n : k) * bell_partial(n, k, xs);
        // terms with s > n-k+1 vanish since B_{n-s,k-1} = 0
        for (int s = 1; s <= n - k + 1; ++s)
            r.rhs += binomial(n, s) * (weighted ? s : 1) * xat(xs, s) * bell_partial(n - s, k - 1, xs);
        return r;
    }
    if (which == "id1") {
        if (xat(xs, 1) == 0) throw std::invalid_argument("id1: x_1 must be nonzero");
        r.lhs = bell_partial(n, k, xs);
        for (int a = 1; a <= n - k; ++a)
            r.rhs += binomial(n, a) * (Rational(k + 1) - Rational(n + 1) / (a + 1)) * xat(xs, a + 1) *
                     bell_partial(n - a, k, xs);
        r.rhs /= xat(xs, 1) * (n - k);
        return r;
    }
    if (which == "id2") {
        if (k2 < 0) throw std::invalid_argument("id2: k2 must be nonnegative");
        r.lhs = bell_partial(n, k + k2, xs);
        for (int a = 0; a <= n; ++a) {
            if (a < k || n - a < k2) continue;  // an empty factor
            r.rhs += binomial(n, a) * bell_partial(a, k, xs) * bell_partial(n - a, k2, xs);
        }
        r.rhs *= factorial(k) * factorial(k2) / factorial(k + k2);
        return r;
    }
    r.lhs = bell_partial(n, k + 1, xs);
    r.rhs = ordered_blocks(n, k + 1, xs) / factorial(k + 1);
    return r;
}

bool verify_bell_identity(const std::string& which, int n, int k, const std::vector<Rational>& xs, int k2) {
    BellSides s = bell_identity_sides(which, n, k, xs, k2);
    return s.lhs == s.rhs;
}

Series lift_solve(const Series& G, int order) {
    if (G[0] == 0) throw std::domain_error("lift_solve: G must be invertible");
    if (order < 1) throw std::invalid_argument("lift_solve: order must be positive");
    if (G.order() < order - 1) throw std::invalid_argument("lift_solve: G known to too low an order");
    // R is the compositional inverse of x / G(x)
    Series q = shift_up(inverse(G.truncate(order - 1)), 1);
    return reversion(q);
}

Rational lift_coefficient(const Series& F, const Series& G, int n) {
    if (n < 1) throw std::invalid_argument("lift_coefficient: n must be positive");
    if (F.order() < n || G.order() < n - 1) throw std::invalid_argument("lift_coefficient: inputs too short");
    Series p = derive(F.truncate(n)) * pow(G.truncate(n - 1), static_cast<unsigned>(n));
    return p[n - 1] / n;
}

Series corolift_resummed(const Series& H, const Series& G, int order) {
    if (H.order() < order || G.order() < order) throw std::invalid_argument("corolift: inputs too short");
    Series R = lift_solve(G, order);
    Series num = compose(H.truncate(order), R);
    Series xgr = shift_up(compose(derive(G).truncate(order - 1), R.truncate(order - 1)), 1);
    return num / (1 - xgr);
}

Series corolift_direct(const Series& H, const Series& G, int order) {
    if (H.order() < order || G.order() < order) throw std::invalid_argument("corolift: inputs too short");
    std::vector<Rational> a(order + 1);
    Series h = H.truncate(order), g = G.truncate(order), acc = h;
    for (int n = 0; n <= order; ++n) {
        a[n] = acc[n];
        acc = acc * g;
    }
    return Series(a, order);
}

IdentityReport verify_coro_pipeline(int order) {
    if (order < 1 || order > kMaxSeriesOrder) throw std::invalid_argument("order must be in 1..64");
    Series B = series_B_chapter3(order + 1);
    IdentityReport z = compare_series("coro_pipeline", series_Z(order), lift_solve(B, order));
    if (!z.ok) {
        z.detail = "Z = xB(Z): " + z.detail;
        return z;
    }
    Series one = Series::constant(1, order);
    Series resummed = shift_up(corolift_resummed(one, B, order - 1), 1);
    IdentityReport r = compare_series("coro_pipeline", series_I0(order), resummed);
    if (!r.ok) return r;
    Series direct = shift_up(corolift_direct(one, B, order - 1), 1);
    return compare_series("coro_pipeline", series_I0(order), direct);
}

}  // namespace chordlab
