#include "chordlab/gfseries.hpp"

#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace chordlab {

namespace {

void check_order(int order) {
    if (order < 0 || order > kMaxSeriesOrder + 2)
        throw std::invalid_argument("series order out of range");
}

Series X(int order) { return Series::x(order); }

std::vector<Rational> ints(std::initializer_list<long> v) {
    std::vector<Rational> out;
    for (long x : v) out.emplace_back(x);
    return out;
}

}  // namespace

const std::vector<std::string>& series_names() {
    static const std::vector<std::string> names{"D", "C", "C1", "C2", "I", "I0",
                                                "Dleq2", "A", "B_lemmaB", "S", "Z", "B_chapter3"};
    return names;
}

SeriesName parse_series_name(const std::string& name) {
    const auto& names = series_names();
    for (size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return static_cast<SeriesName>(i);
    if (name == "Cge2") return SeriesName::C2;
    throw std::invalid_argument("unknown series name: " + name);
}

std::string series_name_string(SeriesName n) { return series_names()[static_cast<size_t>(n)]; }

Series series_D(int order) {
    check_order(order);
    std::vector<Rational> c(order + 1);
    Integer v = 1;
    c[0] = 1;
    for (int n = 1; n <= order; ++n) {
        v *= 2 * n - 1;
        c[n] = v;
    }
    return Series(std::move(c), order);
}

Series series_C(int order) {
    check_order(order);
    // 2xCC' = C(1+C) - x gives C_n = sum_{j=1}^{n-1} (2j-1) C_j C_{n-j}
    std::vector<Integer> c(order + 1, 0);
    if (order >= 1) c[1] = 1;
    for (int n = 2; n <= order; ++n) {
        Integer s = 0;
        for (int j = 1; j < n; ++j) s += (2 * j - 1) * c[j] * c[n - j];
        c[n] = s;
    }
    std::vector<Rational> q(c.begin(), c.end());
    return Series(std::move(q), order);
}

Series series_C2(int order) {
    check_order(order);
    Series C = series_C(order + 1);
    Series u = shift_down(C * C, 1);
    return compose(u - C.truncate(order), reversion(u));
}

Series series_C1(int order) { return series_C(order) - series_C2(order); }

Series series_I0(int order) { return 1 - inverse(series_D(order)); }

Series series_I(int order) { return series_I0(order) + 1; }

Series series_Dleq2(int order) {
    Series C = series_C(order);
    return 1 + C + C * C + (C - X(order));
}

Series series_A(int order) {
    Series c1 = series_C(order) + 1;
    return c1 * c1;
}

Series series_B_lemmaB(int order) {
    int o = order + 1;
    Series C2 = series_C2(o);
    Series xd = theta_op(C2);
    Series num = 4 * ((xd - C2) * (xd - C2));
    Series den = X(o) - (2 * xd - C2);
    return (X(o) + num / den).truncate(order);
}

Series series_S(int order) {
    Series C2 = series_C2(order + 1);
    return inverse(1 - shift_down(C2, 1));
}

Series series_Z(int order) {
    Series I0 = series_I0(order);
    Series one_minus = 1 - I0;
    return X(order) / (one_minus * one_minus);
}

Series series_B_chapter3(int order) { return series_Dleq2(order) + X(order); }

Series series_C2_over_t2_at_u(int order) {
    int o = order + 2;
    Series C = series_C(o + 1);
    Series u = shift_down(C * C, 1);
    Series q = shift_down(series_C2(o), 2);  // C2(t)/t^2, order o-2
    return compose(q, u.truncate(o - 2)).truncate(order);
}

Series named_series(SeriesName name, int order) {
    if (order < 0 || order > kMaxSeriesOrder) throw std::invalid_argument("order must be in 0..64");
    static std::mutex mu;
    static std::map<std::pair<int, int>, Series> cache;
    auto key = std::make_pair(static_cast<int>(name), order);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    Series s;
    switch (name) {
        case SeriesName::D: s = series_D(order); break;
        case SeriesName::C: s = series_C(order); break;
        case SeriesName::C1: s = series_C1(order); break;
        case SeriesName::C2: s = series_C2(order); break;
        case SeriesName::I: s = series_I(order); break;
        case SeriesName::I0: s = series_I0(order); break;
        case SeriesName::Dleq2: s = series_Dleq2(order); break;
        case SeriesName::A: s = series_A(order); break;
        case SeriesName::B_lemmaB: s = series_B_lemmaB(order); break;
        case SeriesName::S: s = series_S(order); break;
        case SeriesName::Z: s = series_Z(order); break;
        case SeriesName::B_chapter3: s = series_B_chapter3(order); break;
    }
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(key, s);
    return s;
}

Series named_series(const std::string& name, int order) {
    return named_series(parse_series_name(name), order);
}

IdentityReport compare_series(const std::string& name, const Series& lhs, const Series& rhs) {
    IdentityReport r;
    r.name = name;
    r.checked_order = std::min(lhs.order(), rhs.order());
    for (int i = 0; i <= r.checked_order; ++i) {
        if (lhs[i] != rhs[i]) {
            r.first_failure = i;
            std::ostringstream os;
            os << "coefficient " << i << ": " << to_string(lhs[i]) << " vs " << to_string(rhs[i]);
            r.detail = os.str();
            r.ok = false;
            return r;
        }
    }
    r.ok = true;
    return r;
}

const std::vector<std::string>& identity_names() {
    static const std::vector<std::string> names{
        "lemma_cd_i", "lemma_cd_ii", "lemma_cd_iii", "inde",          "coro",
        "endcoro",    "C11eq",       "prop2connected", "lagrange_u", "C_quotient"};
    return names;
}

IdentityReport verify_identity(const std::string& name, int order) {
    if (order < 1 || order > kMaxSeriesOrder) throw std::invalid_argument("order must be in 1..64");
    const int N = order;
    Series x = X(N);
    if (name == "lemma_cd_i") {
        Series D = series_D(N);
        return compare_series(name, D - 1, compose(series_C(N), x * D * D));
    }
    if (name == "lemma_cd_ii") {
        Series D = series_D(N + 1);
        Series rhs = 1 + x * D.truncate(N) + 2 * (x * x * derive(D));
        return compare_series(name, D.truncate(N), rhs);
    }
    if (name == "lemma_cd_iii") {
        Series C = series_C(N + 1);
        Series lhs = 2 * (x * C.truncate(N) * derive(C));
        Series Cn = C.truncate(N);
        return compare_series(name, lhs, Cn * (1 + Cn) - x);
    }
    if (name == "C_quotient") {
        Series C = series_C(N);
        Series u01 = 2 * theta_op(C) - C;
        return compare_series(name, C, x / (1 - u01));
    }
    if (name == "inde") {
        Series I0 = series_I0(N + 1);
        Series In = I0.truncate(N);
        return compare_series(name, In, x + 2 * (x * x * derive(I0)) / (1 - In));
    }
    if (name == "coro") {
        Series Z = series_Z(N);
        Series B = series_B_chapter3(N + 1);
        Series rhs = x / (1 - x * compose(derive(B), Z));
        IdentityReport r = compare_series(name, series_I0(N), rhs);
        if (!r.ok) return r;
        IdentityReport z = compare_series(name, Z, x * compose(B.truncate(N), Z));
        if (!z.ok) z.detail = "Z = xB(Z): " + z.detail;
        return z;
    }
    if (name == "endcoro") {
        Series A = series_A(N);
        Series I0 = series_I0(N + 1);
        IdentityReport r;
        r.name = name;
        r.checked_order = N;
        for (int n = 0; n <= N; ++n) {
            Rational lhs = pow(A, n)[n];
            if (lhs != I0[n + 1]) {
                r.first_failure = n;
                r.detail = "[x^n]A^n = " + to_string(lhs) + " vs [x^(n+1)]I0 = " + to_string(I0[n + 1]);
                return r;
            }
        }
        r.ok = true;
        return r;
    }
    if (name == "C11eq") {
        int o = N + 1;
        Series C = series_C(o), C1 = series_C1(o), C2 = series_C2(o);
        Series xo = X(o);
        Series u = 2 * theta_op(C) - C;
        Series v = 2 * theta_op(C1) - C1;
        Series w = theta_op(C2) - C2;
        Series b = xo + 4 * (w * w) / (xo - (2 * theta_op(C2) - C2));
        Series inner = 1 + (u * u) / (1 - u) + 2 * C2.truncate(N) + v.truncate(N) - b;
        return compare_series(name, C1.truncate(N), x * inner);
    }
    if (name == "prop2connected") {
        Series C = series_C(N + 1);
        Series u = shift_down(C * C, 1);
        Series Cn = C.truncate(N);
        IdentityReport r = compare_series(name, Cn, u - compose(series_C2(N), u));
        if (!r.ok) return r;
        Series W = series_C2_over_t2_at_u(N);
        Series row3 = Cn * Cn * W;
        Series row4 = shift_down(C - X(N + 1), 1) * row3;
        return compare_series(name, Cn, x + row3 + row4);
    }
    if (name == "lagrange_u") {
        Series C = series_C(N + 1);
        Series u = shift_down(C * C, 1);
        Series r = reversion(u);
        IdentityReport a = compare_series(name, compose(u, r), x);
        if (!a.ok) return a;
        return compare_series(name, compose(r, u), x);
    }
    throw std::invalid_argument("unknown identity: " + name);
}

const std::vector<ReferenceRow>& reference_rows() {
    static const std::vector<ReferenceRow> rows = [] {
        std::vector<ReferenceRow> r;
        auto xs = [](int o) { return X(o); };
        const std::string g1 = "connectivity series";
        r.push_back({g1, "C", 0, ints({0, 1, 1, 4, 27, 248, 2830, 38232, 593859}), series_C});
        r.push_back({g1, "C1", 0, ints({0, 1, 0, 3, 20, 185, 2101, 28119, 431924}), series_C1});
        r.push_back({g1, "C2", 0, ints({0, 0, 1, 1, 7, 63, 729, 10113, 161935}), series_C2});
        r.push_back({g1, "xC'", 0, ints({0, 1, 2, 12, 108, 1240, 16980}),
                     [](int o) { return theta_op(series_C(o)); }});
        r.push_back({g1, "xC1'", 0, ints({0, 1, 0, 9, 80, 925, 12606}),
                     [](int o) { return theta_op(series_C1(o)); }});
        r.push_back({g1, "xC2'", 0, ints({0, 0, 2, 3, 28, 315, 4374}),
                     [](int o) { return theta_op(series_C2(o)); }});
        r.push_back({g1, "2xC'-C", 0, ints({0, 1, 3, 20, 189, 2232, 31130}), [](int o) {
                         Series C = series_C(o);
                         return 2 * theta_op(C) - C;
                     }});
        r.push_back({g1, "x(2xC'-C)^2/(1-(2xC'-C))", 0, ints({0, 0, 0, 1, 7, 59, 598, 7102}),
                     [xs](int o) {
                         Series C = series_C(o);
                         Series u = 2 * theta_op(C) - C;
                         return xs(o) * (u * u) / (1 - u);
                     }});
        r.push_back({g1, "2xC2", 0, ints({0, 0, 0, 2, 2, 14, 126, 1458}),
                     [xs](int o) { return 2 * (xs(o) * series_C2(o)); }});
        r.push_back({g1, "x(2xC1'-C1)", 0, ints({0, 0, 1, 0, 15, 140, 1665, 23111}), [xs](int o) {
                         Series C1 = series_C1(o);
                         return xs(o) * (2 * theta_op(C1) - C1);
                     }});
        r.push_back({g1, "xB", 0, ints({0, 0, 1, 0, 4, 28, 288, 3552, 50692}),
                     [xs](int o) { return xs(o) * series_B_lemmaB(o); }});

        const std::string g2 = "two-connected substitution";
        r.push_back({g2, "C^2/x", 0, ints({0, 1, 2, 9, 62, 566, 6372}), [](int o) {
                         Series C = series_C(o + 1);
                         return shift_down(C * C, 1);
                     }});
        r.push_back({g2, "[C2(t)/t^2](C^2/x)", 0, ints({1, 1, 9, 100, 1323, 20088, 342430}),
                     series_C2_over_t2_at_u});
        r.push_back({g2, "C^2 [C2(t)/t^2](C^2/x)", 0, ints({0, 0, 1, 3, 20, 189, 2232}), [](int o) {
                         Series C = series_C(o);
                         return C * C * series_C2_over_t2_at_u(o);
                     }});
        r.push_back({g2, "((C-x)/x) C^2 [C2(t)/t^2](C^2/x)", 0, ints({0, 0, 0, 1, 7, 59, 598}),
                     [](int o) {
                         Series C = series_C(o + 1);
                         Series q = shift_down(C - X(o + 1), 1);
                         Series Co = C.truncate(o);
                         return q * Co * Co * series_C2_over_t2_at_u(o);
                     }});

        const std::string g3 = "two-connected asymptotic";
        r.push_back({g3, "S", 0, ints({1, 1, 2, 10, 82, 898, 12018}), series_S});
        r.push_back({g3, "(S+x)^2", 0, ints({1, 4, 8, 28, 208, 2164, 28056}), [xs](int o) {
                         Series t = series_S(o) + xs(o);
                         return t * t;
                     }});
        r.push_back({g3, "((S+x)^2-1)/(2x)", 0, ints({2, 4, 14, 104, 1082, 14028}), [xs](int o) {
                         Series t = series_S(o + 1) + xs(o + 1);
                         return scale(shift_down(t * t - 1, 1), Rational(1, 2));
                     }});
        r.push_back({g3, "C2*S", 0, ints({0, 0, 1, 2, 10, 82, 898, 12018}),
                     [](int o) { return series_C2(o) * series_S(o); }});
        r.push_back({g3, "x^2/(C2*S)", 0, ints({1, -2, -6, -50, -574, -8082}), [](int o) {
                         Series p = series_C2(o + 2) * series_S(o + 2);
                         return inverse(shift_down(p, 2));
                     }});
        {
            std::vector<Rational> e{1, -4, -6, Rational(-176, 3), Rational(-2008, 3), Rational(-46636, 5)};
            r.push_back({g3, "e^2 exp(-((S+x)^2-1)/(2x))", 0, e, [xs](int o) {
                             Series t = series_S(o + 1) + xs(o + 1);
                             Series q = scale(shift_down(t * t - 1, 1), Rational(1, 2));
                             return exp(-(q - 2));
                         }});
        }
        return r;
    }();
    return rows;
}

std::string check_reference_row(const ReferenceRow& row) {
    int top = row.first + static_cast<int>(row.expected.size()) - 1;
    Series s = row.compute(top);
    for (size_t k = 0; k < row.expected.size(); ++k) {
        int i = row.first + static_cast<int>(k);
        if (s[i] != row.expected[k]) {
            std::ostringstream os;
            os << row.label << " at x^" << i << ": got " << to_string(s[i]) << ", expected "
               << to_string(row.expected[k]);
            return os.str();
        }
    }
    return {};
}

}  // namespace chordlab
