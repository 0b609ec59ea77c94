// Acceptance run: one PASS/FAIL line per criterion.
// Usage: acceptance [--seed N] [--expect-red K ...]
// Exit status is nonzero when a criterion fails that was not declared with
// --expect-red, or when a declared one unexpectedly passes.

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "chordlab/asymptotics.hpp"
#include "chordlab/bell.hpp"
#include "chordlab/bijections.hpp"
#include "chordlab/chord.hpp"
#include "chordlab/cli.hpp"
#include "chordlab/diffeo.hpp"
#include "chordlab/gfseries.hpp"
#include "chordlab/yukawa.hpp"

using namespace chordlab;

namespace {

struct Outcome {
    bool ok = true;
    std::ostringstream detail;
    void fail(const std::string& what) {
        if (ok) detail << what;
        ok = false;
    }
};

std::string ratio_list(const std::vector<Rational>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v[i]);
    return s;
}

void tables(Outcome& o) {
    int rows = 0;
    for (const auto& row : reference_rows()) {
        ++rows;
        std::string e = check_reference_row(row);
        if (!e.empty()) o.fail(row.group + " " + row.label + ": " + e);
    }
    for (const auto& row : green_rows()) {
        ++rows;
        std::string e = check_green_row(row);
        if (!e.empty()) o.fail("yukawa " + row.label + ": " + e);
    }
    if (o.ok) o.detail << rows << " rows exact";
}

void brute_force(Outcome& o) {
    const int N = 8;
    Series D = series_D(N), C = series_C(N), C1 = series_C1(N), C2 = series_C2(N), I0 = series_I0(N);
    auto eq = [](std::uint64_t a, const Rational& b) { return Rational(static_cast<unsigned long>(a)) == b; };
    for (int n = 1; n <= N; ++n) {
        ClassCounts k = classify_all(n, N);
        if (!eq(k.total, D[n]) || !eq(k.connected, C[n]) || !eq(k.two_connected, C2[n]) ||
            !eq(k.connectivity_one, C1[n]) || !eq(k.indecomposable, I0[n]))
            o.fail("mismatch at n=" + std::to_string(n));
        if (n == N && o.ok)
            o.detail << "n=8: " << k.total << " diagrams, " << k.connected << " connected, " << k.two_connected
                     << " 2-connected, " << k.connectivity_one << " connectivity-1, " << k.indecomposable
                     << " indecomposable";
    }
}

void alien(Outcome& o) {
    auto prefix = [](const Series& s, int n) {
        std::vector<Rational> v;
        for (int i = 0; i <= n; ++i) v.push_back(s[i]);
        return v;
    };
    auto q = [](const char* s) { return parse_rational(s); };
    const std::vector<Rational> c{q("1"), q("-5/2"), q("-43/8"), q("-579/16"), q("-44477/128"), q("-5326191/1280")};
    const std::vector<Rational> c2{q("1"), q("-6"), q("-4"), q("-218/3"), q("-890"), q("-196838/15")};
    ScaledSeries a = alien_C(10), b = alien_C2(10);
    if (prefix(a.body, 5) != c) o.fail("C body " + ratio_list(prefix(a.body, 5)));
    if (a.offset != -1) o.fail("C offset");
    if (prefix(b.body, 5) != c2) o.fail("C2 body " + ratio_list(prefix(b.body, 5)));
    if (b.offset != -2) o.fail("C2 offset");
    for (int order = 1; order < 10; ++order)
        if (alien_C(order).body != a.body.truncate(order) || alien_C2(order).body != b.body.truncate(order))
            o.fail("prefix not stable at order " + std::to_string(order));
    if (alien_C_body_alternative(10) != a.body) o.fail("C body disagrees with the quotient-free form");
    if (o.ok)
        o.detail << "order 10 coefficients: C " << to_string(a.body[10]) << ", C2 " << to_string(b.body[10]);
}

void fit(Outcome& o) {
    const double limit = 0.5;
    std::ostringstream worst;
    for (const char* s : {"C", "C2"})
        for (int R = 1; R <= 5; ++R) {
            HighFloat prev = 0;
            for (int n : {20, 30, 40}) {
                HighFloat dev = abs(asymptotic_fit(s, n, R).relative_deviation);
                if (n == 20 && dev > limit) {
                    o.fail("");
                    worst << " " << s << " R=" << R << " dev(20)=" << to_string(dev, 3);
                }
                if (n > 20 && dev >= prev) {
                    o.fail("");
                    worst << " " << s << " R=" << R << " not decreasing at n=" << n;
                }
                prev = dev;
            }
        }
    HighFloat e = boost::multiprecision::exp(HighFloat(1));
    HighFloat pc = count_probability("C", 40), target_c = (1 - HighFloat(5) / 160) / e;
    HighFloat p2 = count_probability("C2", 40), target_2 = (1 - HighFloat(3) / 40) / (e * e);
    HighFloat rc = abs(pc / target_c - 1), r2 = abs(p2 / target_2 - 1);
    if (rc > kFitTolerances.connected_probability) {
        o.fail("");
        worst << " connected probability off by " << to_string(rc, 3);
    }
    if (r2 > kFitTolerances.two_connected_probability) {
        o.fail("");
        worst << " 2-connected probability off by " << to_string(r2, 3);
    }
    o.detail.str("");
    if (o.ok)
        o.detail << "all deviations <= 0.5 at n=20 and decreasing";
    else
        o.detail << "violations:" << worst.str();
    o.detail << "; probabilities at n=40 within " << to_string(rc * 100, 3) << "% and " << to_string(r2 * 100, 3)
             << "%";
}

void bijections(Outcome& o) {
    long checked = 0;
    for (int n = 2; n <= 6; ++n)
        for (const auto& g : all_diagrams(n)) {
            if (!is_connected(g)) continue;
            ChordDiagram p = phi(g);
            if (phi_inv(p) != g) o.fail("phi " + g.literal());
            if (nabla_inv(nabla(g)) != g) o.fail("nabla " + g.literal());
            checked += 2;
        }
    for (int n = 1; n <= 6; ++n)
        for (const auto& s : all_seeds(n)) {
            if (!(theta_inv(theta(s)) == s)) o.fail("theta " + s.diagram().literal());
            ++checked;
        }
    std::vector<std::vector<Tadpole>> tad(5);
    const std::vector<std::size_t> sizes{0, 1, 1, 4, 27};
    for (int n = 1; n <= 4; ++n) {
        tad[n] = enumerate_tadpoles(n);
        std::set<ChordDiagram> img;
        for (const auto& t : tad[n]) {
            ChordDiagram g = lambda_bij(t);
            if (!is_connected(g) || g.size() != n || !(lambda_inv(g) == t)) o.fail("lambda " + t.literal());
            img.insert(g);
            ++checked;
        }
        if (img.size() != sizes[n] || tad[n].size() != sizes[n])
            o.fail("lambda image size " + std::to_string(img.size()) + " at loops " + std::to_string(n));
    }
    for (int n = 2; n <= 4; ++n) {
        for (int n1 = 1; n1 < n; ++n1)
            for (const auto& t1 : tad[n1])
                for (const auto& t2 : tad[n - n1])
                    for (int v = 0; v < t2.vertex_count(); ++v) {
                        PsiSplit s = psi_inv(psi(t1, t2, v).t);
                        if (!(s.t1 == t1) || !(s.t2 == t2) || s.d != v) o.fail("psi " + t1.literal());
                        ++checked;
                    }
        for (const auto& t : tad[n]) {
            PsiSplit s = psi_inv(t);
            if (!(psi(s.t1, s.t2, s.d).t == t)) o.fail("psi_inv " + t.literal());
            ++checked;
        }
    }
    if (o.ok) o.detail << checked << " roundtrips; lambda image sizes 1, 1, 4, 27";
}

void qqed(Outcome& o) {
    const std::vector<long> want{1, 1, 7, 63, 729};
    std::vector<long> got;
    for (int loops = 1; loops <= 5; ++loops) {
        long prim = 0;
        enumerate_qqed(loops, [&](const QQEDVertexGraph& g) {
            if (is_k_connected(qqed_chord(g), 2)) ++prim;
        });
        got.push_back(prim);
    }
    Series C2 = series_C2(6);
    for (int n = 2; n <= 6; ++n)
        if (Rational(got[n - 2]) != C2[n]) o.fail("count mismatch at n=" + std::to_string(n));
    if (got != want) o.fail("");
    if (!chain_rule_verify(16)) o.fail("chain rule at order 16");
    o.detail << "primitive counts";
    for (long g : got) o.detail << ' ' << g;
    if (o.ok) o.detail << "; chain rule holds at order 16";
}

std::vector<Rational> random_xs(std::mt19937_64& rng, int len) {
    std::vector<Rational> xs;
    for (int i = 0; i < len; ++i) {
        Rational q = random_rational(rng);
        if (i == 0 && q == 0) q = 1;
        xs.push_back(q);
    }
    return xs;
}

void bell(Outcome& o, std::mt19937_64& rng) {
    const int N = 8;
    long checks = 0;
    for (int trial = 0; trial < 5; ++trial) {
        auto xs = random_xs(rng, N + 1);
        for (int n = 0; n <= N; ++n)
            for (int k = 0; k <= n; ++k) {
                if (bell_partial(n, k, xs) != bell_partial_oracle(n, k, xs))
                    o.fail("oracle at n=" + std::to_string(n) + " k=" + std::to_string(k));
                ++checks;
                for (const auto& id : bell_identity_names()) {
                    if (!bell_identity_applicable(id, n, k)) continue;
                    const bool two = id == "id2";
                    for (int k2 = two ? 0 : 1; k2 <= (two ? n - k : 1); ++k2) {
                        if (!verify_bell_identity(id, n, k, xs, k2))
                            o.fail(id + " at n=" + std::to_string(n) + " k=" + std::to_string(k));
                        ++checks;
                    }
                }
            }
    }
    if (o.ok) o.detail << checks << " exact checks over 5 coefficient sets";
}

Rational amplitude(const Diffeomorphism& f, int n, std::mt19937_64& rng) {
    for (int attempt = 0;; ++attempt) {
        try {
            return amplitude_recursion(f, n, random_kinematics(n, rng));
        } catch (const std::domain_error&) {
            if (attempt > 10) throw;
        }
    }
}

void diffeo(Outcome& o, std::mt19937_64& rng) {
    const int N = 12;
    for (int t = 0; t < 20; ++t) {
        Diffeomorphism f = random_diffeomorphism(1 + t % 6, rng);
        auto b = b_sequence(f, N);
        for (int n = 1; n <= N; ++n)
            if (b_closed_form(f, n) != b[n - 1]) o.fail("closed form " + f.to_string());
        if (!verify_recurrences(f, b, N).ok) o.fail("recurrences " + f.to_string());
        if (!verify_ode(f, N)) o.fail("ode " + f.to_string());
        for (int n = 1; n <= 5; ++n)
            for (int s = 0; s < 3; ++s)
                if (amplitude(f, n, rng) != b[n - 1]) o.fail("amplitude " + f.to_string());
    }
    Diffeomorphism f({1, 1});
    auto bad = b_sequence(f, N);
    bad[2] += 1;
    RecurrenceReport r = verify_recurrences(f, bad, N);
    Diffeomorphism g({1, Rational(1, 2), Rational(1, 3)});
    OdeResiduals res = ode_residuals(g, g.series(N + 2), N);
    if (r.ok) o.fail("perturbed b passes the recurrences");
    if (res.first.is_zero()) o.fail("F in place of G passes the ODE");
    if (o.ok)
        o.detail << "20 diffeomorphisms agree; controls rejected (recurrence at n=" << r.first_failure_mass
                 << ", ODE residual valuation " << res.first.valuation() << ")";
}

}  // namespace

int main(int argc, char** argv) {
    std::uint64_t seed = kDefaultSeed;
    std::set<int> expect_red;
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a == "--seed" && i + 1 < argc)
            seed = std::strtoull(argv[++i], nullptr, 10);
        else if (a == "--expect-red" && i + 1 < argc)
            expect_red.insert(std::atoi(argv[++i]));
        else {
            std::cerr << "usage: acceptance [--seed N] [--expect-red K ...]\n";
            return 2;
        }
    }
    std::mt19937_64 rng(seed);
    std::cout << "seed " << seed << '\n';

    const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
        {"table reproduction", tables},
        {"brute force vs series", brute_force},
        {"alien derivatives", alien},
        {"asymptotic fit", fit},
        {"bijection roundtrips", bijections},
        {"quenched QED", qqed},
        {"Bell suite", [&](Outcome& o) { bell(o, rng); }},
        {"diffeomorphism cancellation", [&](Outcome& o) { diffeo(o, rng); }},
    };

    int unexpected = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        Outcome o;
        auto start = std::chrono::steady_clock::now();
        try {
            criteria[i].second(o);
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool red_expected = expect_red.count(id) > 0;
        std::cout << "criterion " << id << " " << (o.ok ? "PASS" : "FAIL") << " " << criteria[i].first << " ("
                  << std::fixed;
        std::cout.precision(2);
        std::cout << secs << " s): " << o.detail.str();
        if (red_expected) std::cout << (o.ok ? " [declared red, but passed]" : " [declared red]");
        std::cout << '\n';
        if (o.ok == red_expected) ++unexpected;
    }
    return unexpected == 0 ? 0 : 1;
}
