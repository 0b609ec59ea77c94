#pragma once

#include <string>
#include <vector>

#include "chordlab/fps.hpp"
#include "chordlab/gfseries.hpp"

namespace chordlab {

// Indeterminates are passed as xs[0] = x_1, xs[1] = x_2, ...

Rational binomial(int n, int k);

// B_{n,k} through k B_{n,k} = sum_s C(n,s) x_s B_{n-s,k-1}. Tables are cached
// per exact xs value behind a mutex. Throws std::invalid_argument when xs is
// shorter than n-k+1 or n, k are negative.
Rational bell_partial(int n, int k, const std::vector<Rational>& xs);

// Direct sum over set partitions of {1..n} into k blocks (n <= 12).
Rational bell_partial_oracle(int n, int k, const std::vector<Rational>& xs);

// h_n = sum_k f_k B_{n,k}(g_1, g_2, ...) with exponential coefficients f_k, g_k.
// Throws std::domain_error when g_0 != 0.
Rational faa_di_bruno(const std::vector<Rational>& f, const std::vector<Rational>& g, int n);

const std::vector<std::string>& bell_identity_names();

// Both sides of one identity. k2 is used by id2 only.
struct BellSides {
    Rational lhs;
    Rational rhs;
};
BellSides bell_identity_sides(const std::string& which, int n, int k, const std::vector<Rational>& xs,
                              int k2 = 1);
// Throws std::invalid_argument on an unknown name or an invalid (n, k).
bool verify_bell_identity(const std::string& which, int n, int k, const std::vector<Rational>& xs,
                          int k2 = 1);
// Whether (n, k) lies in the valid range of the identity.
bool bell_identity_applicable(const std::string& which, int n, int k);

// Literal k-fold nested sum for the right side of id3 (without the 1/(k+1)! factor).
Rational id3_nested_sum(int n, int k, const std::vector<Rational>& xs);

// R = x G(R); throws std::domain_error when G_0 = 0.
Series lift_solve(const Series& G, int order);
// (1/n) [t^(n-1)] F'(t) G(t)^n
Rational lift_coefficient(const Series& F, const Series& G, int n);
// H(R) / (1 - x G'(R)) with R = x G(R), to the given order.
Series corolift_resummed(const Series& H, const Series& G, int order);
// sum_n ([t^n] H G^n) x^n computed coefficient by coefficient.
Series corolift_direct(const Series& H, const Series& G, int order);

// I0 from Z and B = Dleq2 + x through the resummation above, against series_I0.
IdentityReport verify_coro_pipeline(int order);

}  // namespace chordlab
