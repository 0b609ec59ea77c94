#include "chordlab/fps.hpp"

#include <algorithm>
#include <sstream>

namespace chordlab {

Series::Series(int order) : c_(static_cast<size_t>(order) + 1), order_(order) {
    if (order < 0) throw std::invalid_argument("series order must be >= 0");
}

Series::Series(std::vector<Rational> coeffs, int order) : c_(std::move(coeffs)), order_(order) {
    if (order < 0) throw std::invalid_argument("series order must be >= 0");
    c_.resize(static_cast<size_t>(order) + 1);
}

Series Series::constant(const Rational& v, int order) {
    Series s(order);
    s.c_[0] = v;
    return s;
}

Series Series::x(int order) { return monomial(1, 1, order); }

Series Series::monomial(int k, const Rational& v, int order) {
    Series s(order);
    if (k <= order) s.c_[k] = v;
    return s;
}

const Rational& Series::operator[](int i) const {
    if (i < 0 || i > order_) throw std::out_of_range("coefficient index beyond series order");
    return c_[i];
}

Rational Series::coeff_or_zero(int i) const {
    if (i < 0 || i > order_) return 0;
    return c_[i];
}

int Series::valuation() const {
    for (int i = 0; i <= order_; ++i)
        if (c_[i] != 0) return i;
    return order_ + 1;
}

Series Series::truncate(int order) const {
    if (order > order_) throw std::invalid_argument("cannot truncate to a higher order");
    return Series(std::vector<Rational>(c_.begin(), c_.begin() + order + 1), order);
}

std::string Series::to_string() const {
    std::ostringstream os;
    for (int i = 0; i <= order_; ++i) os << (i ? "," : "") << chordlab::to_string(c_[i]);
    return os.str();
}

bool operator==(const Series& a, const Series& b) {
    return a.order_ == b.order_ && a.c_ == b.c_;
}

Series add(const Series& a, const Series& b) {
    int n = std::min(a.order(), b.order());
    std::vector<Rational> c(n + 1);
    for (int i = 0; i <= n; ++i) c[i] = a[i] + b[i];
    return Series(std::move(c), n);
}

Series sub(const Series& a, const Series& b) {
    int n = std::min(a.order(), b.order());
    std::vector<Rational> c(n + 1);
    for (int i = 0; i <= n; ++i) c[i] = a[i] - b[i];
    return Series(std::move(c), n);
}

Series neg(const Series& a) { return scale(a, -1); }

Series scale(const Series& a, const Rational& s) {
    std::vector<Rational> c(a.coeffs());
    for (auto& v : c) v *= s;
    return Series(std::move(c), a.order());
}

Series operator+(const Series& a, const Rational& s) { return a + Series::constant(s, a.order()); }
Series operator-(const Series& a, const Rational& s) { return a - Series::constant(s, a.order()); }
Series operator-(const Rational& s, const Series& a) { return Series::constant(s, a.order()) - a; }

Series mul(const Series& a, const Series& b) {
    int n = std::min(a.order(), b.order());
    std::vector<Rational> c(n + 1);
    int va = a.valuation(), vb = b.valuation();
    Rational t;
    for (int i = va; i <= n; ++i) {
        if (a[i] == 0) continue;
        for (int j = vb; i + j <= n; ++j) {
            if (b[j] == 0) continue;
            mpq_mul(t.get_mpq_t(), a[i].get_mpq_t(), b[j].get_mpq_t());
            c[i + j] += t;
        }
    }
    return Series(std::move(c), n);
}

Series pow(const Series& a, unsigned k) {
    Series r = Series::constant(1, a.order());
    Series b = a;
    while (k) {
        if (k & 1u) r = r * b;
        k >>= 1;
        if (k) b = b * b;
    }
    return r;
}

Series inverse(const Series& a) {
    if (a[0] == 0) throw std::domain_error("inverse: constant term is zero");
    int n = a.order();
    std::vector<Rational> r(n + 1);
    Rational inv0 = 1 / a[0];
    r[0] = inv0;
    for (int k = 1; k <= n; ++k) {
        Rational s = 0;
        for (int i = 1; i <= k; ++i) s += a[i] * r[k - i];
        r[k] = -s * inv0;
    }
    return Series(std::move(r), n);
}

Series shift_up(const Series& a, int k) {
    std::vector<Rational> c(static_cast<size_t>(a.order() + k) + 1);
    for (int i = 0; i <= a.order(); ++i) c[i + k] = a[i];
    return Series(std::move(c), a.order() + k);
}

Series shift_down(const Series& a, int k) {
    if (a.valuation() < k) throw std::domain_error("shift_down: valuation too small");
    if (k > a.order()) throw std::domain_error("shift_down: order too small");
    return Series(std::vector<Rational>(a.coeffs().begin() + k, a.coeffs().end()), a.order() - k);
}

Series div(const Series& a, const Series& b) {
    int v = b.valuation();
    if (v > b.order()) throw std::domain_error("division by zero series");
    if (v == 0) return a * inverse(b);
    int n = std::min(a.order(), b.order());
    for (int i = 0; i < v && i <= a.order(); ++i)
        if (a[i] != 0) throw std::domain_error("division by series of higher valuation");
    return shift_down(a.truncate(n), v) * inverse(shift_down(b.truncate(n), v));
}

Series derive(const Series& a) {
    if (a.order() == 0) return Series(0);
    std::vector<Rational> c(a.order());
    for (int i = 1; i <= a.order(); ++i) c[i - 1] = a[i] * i;
    return Series(std::move(c), a.order() - 1);
}

Series integrate(const Series& a) {
    std::vector<Rational> c(static_cast<size_t>(a.order()) + 2);
    for (int i = 0; i <= a.order(); ++i) c[i + 1] = a[i] / (i + 1);
    return Series(std::move(c), a.order() + 1);
}

Series theta_op(const Series& a) {
    std::vector<Rational> c(a.coeffs());
    for (int i = 0; i <= a.order(); ++i) c[i] *= i;
    return Series(std::move(c), a.order());
}

Series compose(const Series& f, const Series& g) {
    if (g[0] != 0) throw std::domain_error("compose: inner series has nonzero constant term");
    int n = std::min(f.order(), g.order());
    Series gg = g.truncate(n);
    Series r = Series::constant(f[n], n);
    for (int i = n - 1; i >= 0; --i) r = r * gg + f[i];
    return r;
}

Series exp(const Series& a) {
    if (a[0] != 0) throw std::domain_error("exp: constant term must vanish");
    int n = a.order();
    std::vector<Rational> r(n + 1);
    r[0] = 1;
    for (int k = 1; k <= n; ++k) {
        Rational s = 0;
        for (int i = 1; i <= k; ++i) s += a[i] * i * r[k - i];
        r[k] = s / k;
    }
    return Series(std::move(r), n);
}

Series log(const Series& a) {
    if (a[0] != 1) throw std::domain_error("log: constant term must be 1");
    Series q = derive(a) / a.truncate(std::max(a.order() - 1, 0));
    return integrate(q);
}

Series reversion(const Series& f) {
    if (f[0] != 0) throw std::domain_error("reversion: constant term must vanish");
    if (f.order() < 1 || f[1] == 0) throw std::domain_error("reversion: linear term must be nonzero");
    int n = f.order();
    // Lagrange: [x^k]g = (1/k) [t^{k-1}] (t/f(t))^k
    Series h = inverse(shift_down(f, 1));
    std::vector<Rational> g(n + 1);
    Series p = h;
    for (int k = 1; k <= n; ++k) {
        g[k] = p[k - 1] / k;
        if (k < n) p = p * h;
    }
    return Series(std::move(g), n);
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(const std::string& s) {
    std::string t;
    for (char ch : s)
        if (ch != ' ' && ch != '\t') t += ch;
    if (t.empty()) throw std::invalid_argument("empty rational literal");
    std::string num = t, den = "1";
    auto slash = t.find('/');
    if (slash != std::string::npos) {
        num = t.substr(0, slash);
        den = t.substr(slash + 1);
    }
    if (!num.empty() && num[0] == '+') num = num.substr(1);
    Integer zn, zd;
    try {
        zn = Integer(num);
        zd = Integer(den);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad rational literal: " + s);
    }
    if (zd == 0) throw std::invalid_argument("zero denominator: " + s);
    Rational q(zn, zd);
    q.canonicalize();
    return q;
}

}  // namespace chordlab
