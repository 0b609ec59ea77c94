#include "chordlab/diffeo.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

#include "chordlab/bell.hpp"

namespace chordlab {

static Rational factorial(int n) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return Rational(r);
}

Diffeomorphism::Diffeomorphism(std::vector<Rational> coeffs) : a(std::move(coeffs)) {
    if (a.empty() || a[0] != 1) throw std::invalid_argument("diffeomorphism needs a_0 = 1");
}

Series Diffeomorphism::series(int order) const {
    std::vector<Rational> c(order + 1);
    for (int k = 1; k <= order; ++k) c[k] = coeff(k - 1);
    return Series(c, order);
}

Diffeomorphism Diffeomorphism::parse(const std::string& csv) {
    std::vector<Rational> a;
    std::stringstream in(csv);
    std::string item;
    while (std::getline(in, item, ',')) a.push_back(parse_rational(item));
    return Diffeomorphism(a);
}

std::string Diffeomorphism::to_string() const {
    std::string s;
    for (std::size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + chordlab::to_string(a[i]);
    return s;
}

static void check_n(int n) {
    if (n < 1 || n > kMaxDiffeoN) throw std::invalid_argument("diffeo: n must be in 1..40");
}

Rational b_closed_form(const Diffeomorphism& f, int n) {
    check_n(n);
    const int m = n - 1;
    if (m == 0) return 1;
    std::vector<Rational> xs(m);
    for (int j = 1; j <= m; ++j) xs[j - 1] = -factorial(j) * f.coeff(j);
    Rational b = 0;
    for (int k = 1; k <= m; ++k) b += factorial(m + k) / factorial(m) * bell_partial(m, k, xs);
    return b;
}

std::vector<Rational> b_sequence(const Diffeomorphism& f, int nmax) {
    check_n(nmax);
    Series G = reversion(f.series(nmax));
    std::vector<Rational> b(nmax);
    for (int n = 1; n <= nmax; ++n) b[n - 1] = factorial(n) * G[n];
    return b;
}

Rational b_inverse(const Diffeomorphism& f, int n) { return b_sequence(f, n)[n - 1]; }

static Rational conv(const Diffeomorphism& f, int k, bool weighted) {
    Rational s = 0;
    for (int j = 0; j <= k - 1; ++j) s += f.coeff(j) * f.coeff(k - 1 - j) * (weighted ? (j + 1) * (k - j) : 1);
    return s;
}

Rational recurrence_mass_sum(const Diffeomorphism& f, const std::vector<Rational>& b, int n) {
    Rational total = 0;
    for (int k = 1; k <= n; ++k) {
        Rational inner = 0;
        for (int j = 0; j <= k - 1; ++j)
            inner += f.coeff(j) * f.coeff(k - 1 - j) * (2 * n * (j + 1) * (k - j) - k * (k + 1));
        total += bell_partial(n, k, b) * factorial(k - 1) / 2 * inner;
    }
    return total;
}

Rational recurrence_momentum_sum(const Diffeomorphism& f, const std::vector<Rational>& b, int n) {
    Rational total = 0;
    for (int k = 1; k <= n; ++k) {
        Rational outer = conv(f, k, true) * factorial(k - 1) / (2 * k);
        Rational inner = 0;
        for (int s = 1; s <= n; ++s)
            inner += b[s - 1] / (factorial(s) * factorial(n - s)) * bell_partial(n - s, k - 1, b) *
                     (k * s * (s - 1) + n * (n - 1));
        total += outer * inner;
    }
    return total;
}

RecurrenceReport verify_recurrences(const Diffeomorphism& f, const std::vector<Rational>& b, int nmax) {
    if (static_cast<int>(b.size()) < nmax) throw std::invalid_argument("verify_recurrences: b too short");
    RecurrenceReport r;
    for (int n = 1; n <= nmax; ++n) {
        if (r.first_failure_mass < 0 && recurrence_mass_sum(f, b, n) != 0) r.first_failure_mass = n;
        if (r.first_failure_momentum < 0 && recurrence_momentum_sum(f, b, n) != 0) r.first_failure_momentum = n;
    }
    r.ok = r.first_failure_mass < 0 && r.first_failure_momentum < 0;
    return r;
}

RecurrenceReport verify_recurrences(const Diffeomorphism& f, int nmax) {
    return verify_recurrences(f, b_sequence(f, nmax), nmax);
}

OdeResiduals ode_residuals(const Diffeomorphism& f, const Series& G, int order) {
    const int N = order + 2;
    if (G.order() < N) throw std::invalid_argument("ode_residuals: G known to too low an order");
    if (G[0] != 0) throw std::domain_error("ode_residuals: G must vanish at 0");
    Series F = f.series(N + 1), dF = derive(F);
    Series P = integrate(dF * dF).truncate(N), Q = (F.truncate(N) * dF).truncate(N);
    Series g = G.truncate(N);
    Series PG = compose(P, g);
    OdeResiduals r;
    r.first = (theta_op(PG) - compose(Q, g)).truncate(order);
    r.second = (derive(derive(PG)) + derive(derive(g)) * compose(derive(P), g).truncate(N - 2)).truncate(order);
    return r;
}

bool verify_ode(const Diffeomorphism& f, int order) {
    OdeResiduals r = ode_residuals(f, reversion(f.series(order + 2)), order);
    return r.first.is_zero() && r.second.is_zero();
}

Rational vertex_d(const Diffeomorphism& f, int r) {
    Rational s = 0;
    for (int j = 0; j <= r; ++j) s += (j + 1) * (r - j + 1) * f.coeff(j) * f.coeff(r - j);
    return factorial(r) * s;
}

Rational vertex_c(const Diffeomorphism& f, int r, const Rational& m2) {
    Rational s = 0;
    for (int j = 0; j <= r; ++j) s += f.coeff(j) * f.coeff(r - j);
    return -m2 / 2 * factorial(r + 2) * s;
}

Rational random_rational(std::mt19937_64& rng, int span) {
    std::uniform_int_distribution<int> num(-span, span), den(1, span);
    Rational q(num(rng), den(rng));
    q.canonicalize();
    return q;
}

KinematicSample random_kinematics(int n, std::mt19937_64& rng) {
    KinematicSample k;
    do k.m2 = random_rational(rng);
    while (k.m2 == 0);
    k.s.assign(n, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i) {
        k.s[i][i] = k.m2;
        for (int j = i + 1; j < n; ++j) k.s[i][j] = k.s[j][i] = random_rational(rng);
    }
    return k;
}

Diffeomorphism random_diffeomorphism(int m, std::mt19937_64& rng) {
    std::vector<Rational> a{1};
    for (int j = 1; j <= m; ++j) a.push_back(random_rational(rng));
    return Diffeomorphism(a);
}

Rational amplitude_recursion(const Diffeomorphism& f, int n, const KinematicSample& kin) {
    if (n < 1 || n > kMaxAmplitudeN) throw std::invalid_argument("amplitude_recursion: n must be in 1..7");
    if (kin.legs() < n) throw std::invalid_argument("amplitude_recursion: kinematics has too few legs");
    // (sum_{e in P} p_e)^2 with p_e^2 = m^2
    auto square = [&](unsigned mask) {
        Rational q = 0;
        for (int i = 0; i < n; ++i) {
            if (!(mask >> i & 1u)) continue;
            q += kin.m2;
            for (int j = i + 1; j < n; ++j)
                if (mask >> j & 1u) q += 2 * kin.s[i][j];
        }
        return q;
    };
    std::vector<Rational> d(n), c(n);
    for (int r = 0; r < n; ++r) {
        d[r] = vertex_d(f, r);
        c[r] = vertex_c(f, r, kin.m2);
    }
    std::map<unsigned, Rational> memo;
    auto b = [&](auto&& self, unsigned S) -> Rational {
        std::vector<int> elems;
        for (int i = 0; i < n; ++i)
            if (S >> i & 1u) elems.push_back(i);
        if (elems.size() == 1) return 1;
        auto it = memo.find(S);
        if (it != memo.end()) return it->second;
        const Rational s2 = square(S);
        const Rational den = s2 - kin.m2;
        if (den == 0) throw std::domain_error("amplitude_recursion: vanishing propagator, resample kinematics");
        const int L = static_cast<int>(elems.size());
        std::vector<int> rgs(L, 0);
        Rational sum = 0;
        while (true) {
            int k = 0;
            for (int v : rgs) k = std::max(k, v + 1);
            if (k >= 2) {
                std::vector<unsigned> blocks(k, 0u);
                for (int i = 0; i < L; ++i) blocks[rgs[i]] |= 1u << elems[i];
                Rational prod = 1, squares = s2;
                for (unsigned B : blocks) {
                    prod *= self(self, B);
                    squares += square(B);
                }
                sum += prod * (d[k - 1] / 2 * squares + c[k - 1]);
            }
            int i = L - 1;
            while (i > 0) {
                int mx = 0;
                for (int j = 0; j < i; ++j) mx = std::max(mx, rgs[j]);
                if (rgs[i] <= mx) break;
                rgs[i] = 0;
                --i;
            }
            if (i == 0) break;
            ++rgs[i];
        }
        // i * i from the vertex and the propagator of the marked edge
        Rational v = -sum / den;
        memo[S] = v;
        return v;
    };
    return b(b, (1u << n) - 1);
}

}  // namespace chordlab
