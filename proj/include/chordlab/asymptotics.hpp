#pragma once

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include "chordlab/fps.hpp"

namespace chordlab {

using HighFloat = boost::multiprecision::number<boost::multiprecision::cpp_dec_float<60>>;

// Represents e^offset * body, optionally times 1/sqrt(2 pi).
struct ScaledSeries {
    Series body;
    Rational offset = 0;
    bool sqrt2pi_inverse = false;
};
ScaledSeries operator*(const ScaledSeries& a, const ScaledSeries& b);
// Throws std::invalid_argument unless offsets and flags agree.
ScaledSeries operator+(const ScaledSeries& a, const ScaledSeries& b);

// Asymptotic images of C and the 2-connected series in the scale
// Gamma^2_{1/2}(n) = sqrt(2 pi) (2n-1)!!.
ScaledSeries alien_C(int order);
// (1 + C - 2xC') exp(...): the same body written without the quotient.
Series alien_C_body_alternative(int order);
ScaledSeries alien_C2(int order);

// Both sides of the chain rule applied to D = 1 + C(xD^2); with the D image
// equal to 1 the sum must be the constant 1. drop_first omits the first term.
Series chain_rule_sum(int order, bool drop_first = false);
bool chain_rule_verify(int order);

// Image of C^2 through the chain rule on D^2 = 1 + 2C(xD^2) + C(xD^2)^2,
// compared with 2C times the image of C.
bool product_rule_verify(int order);

// Exact counts for large n: C_n from the quadratic recurrence and the
// 2-connected counts from C2(C^2/x) = C^2/x - C, both in integers.
std::vector<Integer> connected_counts(int nmax);
std::vector<Integer> two_connected_counts(int nmax);
inline constexpr int kMaxFitN = 200;

Integer double_factorial_odd(int n);  // (2n-1)!!, 1 for n <= 0

struct FitReport {
    std::string series;
    int n = 0, R = 0;
    HighFloat exact, partial_sum, scaled_remainder, next_term;
    // scaled_remainder / next_term - 1
    HighFloat relative_deviation;
};
// series is "C" or "C2"; requires R >= 0 and R + 2 <= n <= kMaxFitN.
FitReport asymptotic_fit(const std::string& series, int n, int R);

// exact / (2n-1)!! for C or C2.
HighFloat count_probability(const std::string& series, int n);

struct FitTolerances {
    double first_deviation = 0.5;        // at the smallest n checked
    double connected_probability = 0.002;
    double two_connected_probability = 0.005;
};
inline constexpr FitTolerances kFitTolerances{};

std::string to_string(const HighFloat& v, int digits = 12);

}  // namespace chordlab
