#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "chordlab/fps.hpp"

namespace chordlab {

// F(t) = sum_j a_j t^(j+1) with a_0 = 1.
struct Diffeomorphism {
    std::vector<Rational> a;

    explicit Diffeomorphism(std::vector<Rational> coeffs);
    Rational coeff(int j) const { return j < static_cast<int>(a.size()) ? a[j] : Rational(0); }
    Series series(int order) const;
    static Diffeomorphism parse(const std::string& csv);  // "1,1/2,-3"
    std::string to_string() const;
};

inline constexpr int kMaxDiffeoN = 40;
inline constexpr int kMaxAmplitudeN = 7;

// b_{n+1} = sum_k (n+k)!/n! B_{n,k}(-1! a_1, -2! a_2, ...)
Rational b_closed_form(const Diffeomorphism& f, int n);
// n! [t^n] of the compositional inverse of F.
Rational b_inverse(const Diffeomorphism& f, int n);
// b_1..b_nmax from b_inverse; index 0 holds b_1.
std::vector<Rational> b_sequence(const Diffeomorphism& f, int nmax);

// Values of the two recurrence sums for n = 1..nmax; b[0] = b_1.
struct RecurrenceReport {
    bool ok = true;
    int first_failure_mass = -1;      // first n with a nonzero m^2 sum
    int first_failure_momentum = -1;  // first n with a nonzero dot-product sum
};
Rational recurrence_mass_sum(const Diffeomorphism& f, const std::vector<Rational>& b, int n);
Rational recurrence_momentum_sum(const Diffeomorphism& f, const std::vector<Rational>& b, int n);
RecurrenceReport verify_recurrences(const Diffeomorphism& f, const std::vector<Rational>& b, int nmax);
RecurrenceReport verify_recurrences(const Diffeomorphism& f, int nmax);

// P = integral of F'^2, Q = (F^2)'/2. The residuals of
// t P(G)' - Q(G) and P(G)'' + G'' P'(G), to the given order.
struct OdeResiduals {
    Series first, second;
};
OdeResiduals ode_residuals(const Diffeomorphism& f, const Series& G, int order);
bool verify_ode(const Diffeomorphism& f, int order);

// Feynman constants: kinematic vertex d_r and massive vertex c_r (without i).
Rational vertex_d(const Diffeomorphism& f, int r);
Rational vertex_c(const Diffeomorphism& f, int r, const Rational& m2);

// On-shell kinematics: p_i^2 = m2, s[i][j] = p_i . p_j for i != j.
struct KinematicSample {
    Rational m2;
    std::vector<std::vector<Rational>> s;
    int legs() const { return static_cast<int>(s.size()); }
};
KinematicSample random_kinematics(int n, std::mt19937_64& rng);
Rational random_rational(std::mt19937_64& rng, int span = 9);
Diffeomorphism random_diffeomorphism(int m, std::mt19937_64& rng);

// Momentum-level recursion over set partitions into at least two blocks,
// including the propagator of the marked edge. Throws std::domain_error on a
// vanishing denominator and std::invalid_argument when n > kMaxAmplitudeN.
Rational amplitude_recursion(const Diffeomorphism& f, int n, const KinematicSample& kin);

}  // namespace chordlab
