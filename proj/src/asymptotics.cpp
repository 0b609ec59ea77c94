#include "chordlab/asymptotics.hpp"

#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "chordlab/gfseries.hpp"

namespace chordlab {

ScaledSeries operator*(const ScaledSeries& a, const ScaledSeries& b) {
    if (a.sqrt2pi_inverse && b.sqrt2pi_inverse)
        throw std::invalid_argument("ScaledSeries: 1/(2 pi) factors are not tracked");
    return {a.body * b.body, a.offset + b.offset, a.sqrt2pi_inverse || b.sqrt2pi_inverse};
}

ScaledSeries operator+(const ScaledSeries& a, const ScaledSeries& b) {
    if (a.offset != b.offset || a.sqrt2pi_inverse != b.sqrt2pi_inverse)
        throw std::invalid_argument("ScaledSeries: addition needs equal offsets");
    return {a.body + b.body, a.offset, a.sqrt2pi_inverse};
}

static void check_alien_order(int order) {
    if (order < 0 || order > 32) throw std::invalid_argument("order must be in 0..32");
}

// exp(-(e - e_0)) with the constant returned separately
static Series exp_without_constant(const Series& e, Rational* constant) {
    *constant = e[0];
    return exp(-(e - e[0]));
}

ScaledSeries alien_C(int order) {
    check_alien_order(order);
    Series C = series_C(order + 1);
    Series E = shift_down(2 * C + C * C, 1);
    E = E * Series::constant(Rational(1, 2), order);
    Rational c0;
    Series ex = exp_without_constant(E, &c0);
    Series x_over_C = inverse(shift_down(C, 1));
    return {x_over_C * ex, -c0, true};
}

Series alien_C_body_alternative(int order) {
    check_alien_order(order);
    Series C = series_C(order + 1);
    Series E = shift_down(2 * C + C * C, 1) * Series::constant(Rational(1, 2), order);
    Rational c0;
    Series ex = exp_without_constant(E, &c0);
    Series Ct = C.truncate(order);
    return (1 + Ct - 2 * theta_op(C).truncate(order)) * ex;
}

ScaledSeries alien_C2(int order) {
    check_alien_order(order);
    Series C2 = series_C2(order + 2);
    Series S = series_S(order + 1);
    Series x = Series::x(order + 1);
    Series sx = S + x;
    Series q = shift_down(sx * sx - 1, 1) * Series::constant(Rational(1, 2), order);
    Rational c0;
    Series ex = exp_without_constant(q, &c0);
    Series front = inverse(shift_down(C2, 2) * S.truncate(order));
    return {front * ex, -c0, true};
}

Series chain_rule_sum(int order, bool drop_first) {
    check_alien_order(order);
    const int N = order;
    Series D = series_D(N + 1);
    Series g = shift_up(D * D, 1).truncate(N);  // x D^2
    Series C = series_C(N + 1);
    Series first = 2 * shift_up(D.truncate(N - 1), 1) * compose(derive(C), g);
    // (D^2 - 1)/(2 x D^2) has constant term 1, which cancels the -1 offset
    Series D2 = (D * D);
    Series expo = shift_down(D2 - 1, 1) / (2 * D2.truncate(N));
    if (expo[0] != 1) throw std::logic_error("chain rule: unexpected exponent constant");
    ScaledSeries a = alien_C(N);
    if (a.offset + expo[0] != 0) throw std::logic_error("chain rule: offsets do not cancel");
    Series second = inverse(D.truncate(N)) * exp(expo - 1) * compose(a.body, g);
    return drop_first ? second : first + second;
}

bool chain_rule_verify(int order) { return chain_rule_sum(order) == Series::constant(1, order); }

bool product_rule_verify(int order) {
    check_alien_order(order);
    const int N = order;
    Series D = series_D(N + 1);
    Series g = shift_up(D * D, 1).truncate(N);
    Series C = series_C(N + 1);
    Series Cg = compose(C.truncate(N), g), dCg = compose(derive(C), g);
    Series D2 = D * D;
    Series expo = shift_down(D2 - 1, 1) / (2 * D2.truncate(N));
    Series weight = inverse(D.truncate(N)) * exp(expo - 1);
    // image of D^2 - 1 - 2C(g) is 2D - 2; the C(g)^2 chain term uses image(g) = 2xD
    Series lhs = 2 * D.truncate(N) - 2 - 4 * (Cg * dCg * shift_up(D.truncate(N - 1), 1));
    ScaledSeries a = alien_C(N);
    Series rhs = weight * compose(2 * C.truncate(N) * a.body, g);
    return lhs == rhs;
}

namespace {
std::mutex g_count_mutex;
std::vector<Integer> g_connected, g_two_connected;
}  // namespace

std::vector<Integer> connected_counts(int nmax) {
    if (nmax < 0 || nmax > kMaxFitN + 1) throw std::invalid_argument("connected_counts: n out of range");
    std::lock_guard<std::mutex> lock(g_count_mutex);
    if (static_cast<int>(g_connected.size()) <= nmax) {
        std::vector<Integer> c(nmax + 1, 0);
        if (nmax >= 1) c[1] = 1;
        for (int n = 2; n <= nmax; ++n) {
            Integer acc = 0;
            for (int j = 1; j < n; ++j) acc += (2 * j - 1) * c[j] * c[n - j];
            c[n] = acc;
        }
        g_connected = c;
    }
    return {g_connected.begin(), g_connected.begin() + nmax + 1};
}

std::vector<Integer> two_connected_counts(int nmax) {
    if (nmax < 0 || nmax > kMaxFitN) throw std::invalid_argument("two_connected_counts: n out of range");
    auto c = connected_counts(nmax + 1);
    std::lock_guard<std::mutex> lock(g_count_mutex);
    if (static_cast<int>(g_two_connected.size()) <= nmax) {
        const int N = nmax;
        // u = C^2 / x, coefficients 0..N
        std::vector<Integer> u(N + 1, 0);
        for (int n = 1; n <= N; ++n)
            for (int j = 1; j <= n; ++j) u[n] += c[j] * c[n + 1 - j];
        // target t = u - C; solve t_n = sum_k a_k [x^n] u^k triangularly
        std::vector<Integer> t(N + 1);
        for (int n = 0; n <= N; ++n) t[n] = u[n] - c[n];
        std::vector<Integer> a(N + 1, 0);
        std::vector<std::vector<Integer>> pw;  // pw[k] = u^k truncated
        pw.push_back(std::vector<Integer>(N + 1, 0));
        pw[0][0] = 1;
        for (int k = 1; k <= N; ++k) {
            std::vector<Integer> next(N + 1, 0);
            for (int i = 0; i <= N; ++i) {
                if (pw[k - 1][i] == 0) continue;
                for (int j = 1; i + j <= N; ++j) next[i + j] += pw[k - 1][i] * u[j];
            }
            pw.push_back(std::move(next));
        }
        for (int n = 1; n <= N; ++n) {
            Integer acc = t[n];
            for (int k = 1; k < n; ++k) acc -= a[k] * pw[k][n];
            a[n] = acc;  // [x^n] u^n = 1
        }
        g_two_connected = a;
    }
    return {g_two_connected.begin(), g_two_connected.begin() + nmax + 1};
}

Integer double_factorial_odd(int n) {
    Integer r = 1;
    for (int k = 1; k <= n; ++k) r *= 2 * k - 1;
    return r;
}

static HighFloat to_high(const Integer& z) { return HighFloat(z.get_str()); }
static HighFloat to_high(const Rational& q) { return to_high(q.get_num()) / to_high(q.get_den()); }

static const ScaledSeries& cached_alien(const std::string& series) {
    static const ScaledSeries c = alien_C(12), c2 = alien_C2(12);
    if (series == "C") return c;
    if (series == "C2") return c2;
    throw std::invalid_argument("asymptotic fit: series must be C or C2");
}

static Integer exact_count(const std::string& series, int n) {
    if (series == "C") return connected_counts(n)[n];
    if (series == "C2") return two_connected_counts(n)[n];
    throw std::invalid_argument("asymptotic fit: series must be C or C2");
}

FitReport asymptotic_fit(const std::string& series, int n, int R) {
    const ScaledSeries& a = cached_alien(series);
    if (R < 0 || R > a.body.order()) throw std::invalid_argument("asymptotic fit: R out of range");
    if (n < R + 2 || n > kMaxFitN) throw std::invalid_argument("asymptotic fit: n out of range");
    FitReport r;
    r.series = series;
    r.n = n;
    r.R = R;
    HighFloat scale = boost::multiprecision::exp(to_high(a.offset));
    r.exact = to_high(exact_count(series, n));
    HighFloat sum = 0;
    for (int k = 0; k < R; ++k) sum += to_high(a.body[k]) * to_high(double_factorial_odd(n - k));
    r.partial_sum = scale * sum;
    r.scaled_remainder = (r.exact - r.partial_sum) / to_high(double_factorial_odd(n - R));
    r.next_term = scale * to_high(a.body[R]);
    r.relative_deviation = r.scaled_remainder / r.next_term - 1;
    return r;
}

HighFloat count_probability(const std::string& series, int n) {
    if (n < 1 || n > kMaxFitN) throw std::invalid_argument("count_probability: n out of range");
    return to_high(exact_count(series, n)) / to_high(double_factorial_odd(n));
}

std::string to_string(const HighFloat& v, int digits) {
    std::ostringstream os;
    os.precision(digits);
    os << v;
    return os.str();
}

}  // namespace chordlab
