#include "chordlab/asymptotics.hpp"

#include <stdexcept>

#include "chordlab/gfseries.hpp"
#include "doctest.h"

using namespace chordlab;

static std::vector<Rational> prefix(const Series& s, int n) {
    std::vector<Rational> v;
    for (int i = 0; i <= n; ++i) v.push_back(s[i]);
    return v;
}

static Rational q(const char* s) { return parse_rational(s); }

TEST_CASE("image of C") {
    ScaledSeries a = alien_C(10);
    CHECK(a.offset == -1);
    CHECK(a.sqrt2pi_inverse);
    std::vector<Rational> expect{q("1"), q("-5/2"), q("-43/8"), q("-579/16"), q("-44477/128"),
                                 q("-5326191/1280"), q("-180306541/3072")};
    CHECK(prefix(a.body, 6) == expect);
    CHECK(alien_C(5).body == a.body.truncate(5));
    CHECK(alien_C_body_alternative(12) == alien_C(12).body);
}

TEST_CASE("image of the 2-connected series") {
    ScaledSeries a = alien_C2(10);
    CHECK(a.offset == -2);
    std::vector<Rational> expect{q("1"), q("-6"), q("-4"), q("-218/3"), q("-890"), q("-196838/15"),
                                 q("-9972896/45")};
    CHECK(prefix(a.body, 6) == expect);
    CHECK(alien_C2(5).body == a.body.truncate(5));
}

TEST_CASE("scaled series arithmetic") {
    ScaledSeries a{Series::constant(2, 3), -1, true}, b{Series::x(3), -1, false};
    ScaledSeries p = a * b;
    CHECK(p.offset == -2);
    CHECK(p.sqrt2pi_inverse);
    CHECK_THROWS_AS(a + b, std::invalid_argument);
    ScaledSeries c{Series::x(3), -1, true};
    CHECK((a + c).body == Series::constant(2, 3) + Series::x(3));
}

TEST_CASE("chain rule") {
    CHECK(chain_rule_verify(10));
    CHECK(chain_rule_verify(16));
    Series broken = chain_rule_sum(6, true);
    CHECK(broken[0] == 1);
    CHECK(broken[1] != 0);
    CHECK_THROWS_AS(chain_rule_verify(40), std::invalid_argument);
}

TEST_CASE("product rule") { CHECK(product_rule_verify(10)); }

TEST_CASE("exact counts for the fit") {
    auto c = connected_counts(60);
    Series C = series_C(60);
    for (int n = 0; n <= 60; ++n) CHECK(Rational(c[n]) == C[n]);
    auto c2 = two_connected_counts(40);
    Series C2 = series_C2(40);
    for (int n = 0; n <= 40; ++n) CHECK(Rational(c2[n]) == C2[n]);
    CHECK(double_factorial_odd(4) == 105);
    CHECK_THROWS_AS(two_connected_counts(kMaxFitN + 1), std::invalid_argument);
}

TEST_CASE("first-order probabilities") {
    HighFloat e = boost::multiprecision::exp(HighFloat(1));
    for (int n : {30, 40, 60}) {
        HighFloat pc = count_probability("C", n);
        HighFloat model = (1 - HighFloat(5) / (4 * n)) / e;
        CHECK(abs(pc / model - 1) < HighFloat(3) / (n * n));
        HighFloat p2 = count_probability("C2", n);
        HighFloat model2 = (1 - HighFloat(3) / n) / (e * e);
        CHECK(abs(p2 / model2 - 1) < HighFloat(10) / (n * n));
    }
}

TEST_CASE("scaled remainders approach the next coefficient") {
    for (const char* s : {"C", "C2"})
        for (int R = 1; R <= 5; ++R) {
            HighFloat prev = 1e9;
            for (int n : {20, 30, 40, 60}) {
                FitReport r = asymptotic_fit(s, n, R);
                HighFloat dev = abs(r.relative_deviation);
                INFO(s << " R=" << R << " n=" << n << " dev=" << to_string(dev, 6));
                CHECK(dev < prev);
                prev = dev;
            }
        }
    FitReport r = asymptotic_fit("C", 40, 4);
    CHECK(abs(r.relative_deviation) < 0.25);
    CHECK_THROWS_AS(asymptotic_fit("C", 3, 2), std::invalid_argument);
    CHECK_THROWS_AS(asymptotic_fit("D", 30, 2), std::invalid_argument);
}

TEST_CASE("partial sum with zero terms") {
    FitReport r = asymptotic_fit("C", 30, 0);
    CHECK(r.partial_sum == 0);
    CHECK(abs(r.scaled_remainder * boost::multiprecision::exp(HighFloat(1)) - 1) < 0.05);
}
