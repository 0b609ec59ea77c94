#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace chordlab {

using Rational = mpq_class;
using Integer = mpz_class;

// Truncated power series: coefficients [x^0..x^N] are exact, everything
// above the order N is unknown.
class Series {
public:
    Series() : c_(1), order_(0) {}
    explicit Series(int order);
    Series(std::vector<Rational> coeffs, int order);

    static Series zero(int order) { return Series(order); }
    static Series constant(const Rational& v, int order);
    static Series x(int order);
    static Series monomial(int k, const Rational& v, int order);

    int order() const { return order_; }
    const std::vector<Rational>& coeffs() const { return c_; }
    // Coefficient lookup; indices past the order are an error.
    const Rational& operator[](int i) const;
    Rational coeff_or_zero(int i) const;
    // Index of the first nonzero coefficient, or order+1 when all vanish.
    int valuation() const;
    bool is_zero() const { return valuation() > order_; }

    Series truncate(int order) const;
    std::string to_string() const;

    friend bool operator==(const Series& a, const Series& b);

private:
    std::vector<Rational> c_;
    int order_;
};

Series add(const Series& a, const Series& b);
Series sub(const Series& a, const Series& b);
Series neg(const Series& a);
Series scale(const Series& a, const Rational& s);
Series mul(const Series& a, const Series& b);
Series pow(const Series& a, unsigned k);
Series inverse(const Series& a);
Series div(const Series& a, const Series& b);
Series derive(const Series& a);
Series integrate(const Series& a);
Series compose(const Series& f, const Series& g);
Series exp(const Series& a);
Series log(const Series& a);
Series reversion(const Series& f);
// Multiply by x^k (order grows by k).
Series shift_up(const Series& a, int k);
// Divide by x^k; requires valuation >= k (order shrinks by k).
Series shift_down(const Series& a, int k);
// x * d/dx
Series theta_op(const Series& a);

inline Series operator+(const Series& a, const Series& b) { return add(a, b); }
inline Series operator-(const Series& a, const Series& b) { return sub(a, b); }
inline Series operator-(const Series& a) { return neg(a); }
inline Series operator*(const Series& a, const Series& b) { return mul(a, b); }
inline Series operator/(const Series& a, const Series& b) { return div(a, b); }
inline Series operator*(const Rational& s, const Series& a) { return scale(a, s); }
Series operator+(const Series& a, const Rational& s);
Series operator-(const Series& a, const Rational& s);
Series operator-(const Rational& s, const Series& a);
inline Series operator+(const Rational& s, const Series& a) { return a + s; }

// Exact rational to text: "a" or "a/b".
std::string to_string(const Rational& q);
Rational parse_rational(const std::string& s);

}  // namespace chordlab
