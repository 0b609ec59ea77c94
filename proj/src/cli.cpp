#include "chordlab/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "chordlab/asymptotics.hpp"
#include "chordlab/bell.hpp"
#include "chordlab/bijections.hpp"
#include "chordlab/chord.hpp"
#include "chordlab/diffeo.hpp"
#include "chordlab/fps.hpp"
#include "chordlab/gfseries.hpp"
#include "chordlab/yukawa.hpp"

namespace chordlab {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------- rendering

static std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

std::string render(const OutputRecord& r, const std::string& format) {
    std::ostringstream os;
    if (format == "json") {
        Json j;
        j["command"] = r.command;
        j["parameters"] = Json::object();
        for (const auto& [k, v] : r.parameters) j["parameters"][k] = v;
        j["columns"] = r.columns;
        j["rows"] = r.rows;
        os << j.dump(2) << '\n';
    } else if (format == "csv") {
        for (std::size_t i = 0; i < r.columns.size(); ++i) os << (i ? "," : "") << csv_cell(r.columns[i]);
        os << '\n';
        for (const auto& row : r.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
            os << '\n';
        }
    } else if (format == "bfile") {
        if (r.columns.size() != 2) throw std::invalid_argument("bfile output needs exactly two columns");
        os << "# " << r.command;
        for (const auto& [k, v] : r.parameters) os << ' ' << k << '=' << v;
        os << '\n';
        for (const auto& row : r.rows) os << row[0] << ' ' << row[1] << '\n';
    } else if (format == "table") {
        for (const auto& [k, v] : r.parameters) os << "# " << k << ": " << v << '\n';
        std::vector<std::size_t> w(r.columns.size());
        for (std::size_t i = 0; i < w.size(); ++i) w[i] = r.columns[i].size();
        for (const auto& row : r.rows)
            for (std::size_t i = 0; i < row.size() && i < w.size(); ++i) w[i] = std::max(w[i], row[i].size());
        auto line = [&](const std::vector<std::string>& cells) {
            std::string s;
            for (std::size_t i = 0; i < cells.size(); ++i) {
                std::string c = cells[i];
                if (i + 1 < cells.size()) c.resize(std::max(c.size(), w[i]), ' ');
                s += (i ? "  " : "") + c;
            }
            os << s << '\n';
        };
        line(r.columns);
        for (const auto& row : r.rows) line(row);
    } else {
        throw std::invalid_argument("unknown format: " + format);
    }
    return os.str();
}

OutputRecord parse_json_record(const std::string& text) {
    Json j = Json::parse(text);
    OutputRecord r;
    r.command = j.at("command").get<std::string>();
    for (const auto& [k, v] : j.at("parameters").items()) r.parameters.push_back({k, v.get<std::string>()});
    r.columns = j.at("columns").get<std::vector<std::string>>();
    r.rows = j.at("rows").get<std::vector<std::vector<std::string>>>();
    return r;
}

// ------------------------------------------------------------------ b-files

const std::vector<OeisOffset>& oeis_offsets() {
    static const std::vector<OeisOffset> table{
        {"D", "A001147", 0, 0, "double factorials (2n-1)!!"},
        {"C", "A000699", 0, 1, "a(0) = 1 counts the empty diagram, which C excludes"},
        {"I", "A000698", 0, 0, "indecomposable diagrams including the empty one"},
        {"A", "A088221", 0, 0, "A = (1 + C)^2"},
        {"C2", "A049464", 1, 1, "assumed offset 1: a(1) is the one 2-connected diagram on 2 chords"},
    };
    return table;
}

std::vector<BfileEntry> read_bfile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read b-file " + path);
    std::vector<BfileEntry> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        BfileEntry e;
        std::string extra;
        if (!(ls >> e.index >> e.value) || (ls >> extra))
            throw std::invalid_argument("malformed b-file line " + std::to_string(lineno) + ": " + line);
        Integer check;
        if (check.set_str(e.value, 10) != 0)
            throw std::invalid_argument("malformed b-file value on line " + std::to_string(lineno));
        out.push_back(e);
    }
    return out;
}

int enumeration_limit() {
    const char* env = std::getenv("CHORDLAB_MAX_N");
    if (!env || !*env) return kDefaultMaxEnumerationN;
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1 || v > 14) throw std::invalid_argument("CHORDLAB_MAX_N must be an integer in 1..14");
    return static_cast<int>(v);
}

// ------------------------------------------------------------------- suites

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"chord", "bell", "diffeo", "yukawa"};
    return names;
}

namespace {

struct Collector {
    std::string suite;
    std::vector<CheckResult> out;
    void add(const std::string& name, bool ok, const std::string& detail = "") {
        out.push_back({suite, name, ok, detail});
    }
    template <class F>
    void guarded(const std::string& name, F&& f) {
        try {
            std::string detail;
            bool ok = f(detail);
            add(name, ok, detail);
        } catch (const std::exception& e) {
            add(name, false, std::string("exception: ") + e.what());
        }
    }
};

std::vector<Rational> random_xs(std::mt19937_64& rng, int len) {
    std::vector<Rational> xs;
    for (int i = 0; i < len; ++i) {
        Rational q = random_rational(rng);
        if (i == 0 && q == 0) q = 1;
        xs.push_back(q);
    }
    return xs;
}

void chord_suite(Collector& c, int order) {
    const int N = std::min(order, kMaxSeriesOrder);
    for (const auto& row : reference_rows())
        c.guarded("row " + row.label, [&](std::string& d) {
            d = check_reference_row(row);
            return d.empty();
        });
    for (const auto& id : identity_names())
        c.guarded("identity " + id, [&](std::string& d) {
            IdentityReport r = verify_identity(id, N);
            d = r.detail;
            return r.ok;
        });
    const int brute = std::min({N, 7, enumeration_limit()});
    c.guarded("brute force n<=" + std::to_string(brute), [&](std::string& d) {
        Series D = series_D(brute), C = series_C(brute), C1 = series_C1(brute), C2 = series_C2(brute),
               I0 = series_I0(brute);
        for (int n = 1; n <= brute; ++n) {
            ClassCounts k = classify_all(n, brute);
            bool ok = Rational(static_cast<unsigned long>(k.total)) == D[n] &&
                      Rational(static_cast<unsigned long>(k.connected)) == C[n] &&
                      Rational(static_cast<unsigned long>(k.two_connected)) == C2[n] &&
                      Rational(static_cast<unsigned long>(k.connectivity_one)) == C1[n] &&
                      Rational(static_cast<unsigned long>(k.indecomposable)) == I0[n];
            if (!ok) {
                d = "mismatch at n=" + std::to_string(n);
                return false;
            }
        }
        return true;
    });
    const int bij = std::min(N, 5);
    c.guarded("phi and nabla roundtrip n<=" + std::to_string(bij), [&](std::string& d) {
        for (int n = 2; n <= bij; ++n)
            for (const auto& g : all_diagrams(n)) {
                if (!is_connected(g)) continue;
                if (phi_inv(phi(g)) != g || nabla_inv(nabla(g)) != g) {
                    d = g.literal();
                    return false;
                }
            }
        return true;
    });
    c.guarded("theta roundtrip n<=" + std::to_string(bij), [&](std::string& d) {
        for (int n = 1; n <= bij; ++n)
            for (const auto& s : all_seeds(n))
                if (!(theta_inv(theta(s)) == s)) {
                    d = s.diagram().literal();
                    return false;
                }
        return true;
    });
    c.guarded("chain rule", [&](std::string&) { return chain_rule_verify(std::min(N, 16)); });
    c.guarded("product rule", [&](std::string&) { return product_rule_verify(std::min(N, 16)); });
}

void bell_suite(Collector& c, int order, std::mt19937_64& rng) {
    const int nmax = std::min(order, 8);
    c.guarded("recurrence vs partitions n<=" + std::to_string(nmax), [&](std::string& d) {
        auto xs = random_xs(rng, nmax + 1);
        for (int n = 0; n <= nmax; ++n)
            for (int k = 0; k <= n; ++k)
                if (bell_partial(n, k, xs) != bell_partial_oracle(n, k, xs)) {
                    d = "n=" + std::to_string(n) + " k=" + std::to_string(k);
                    return false;
                }
        return true;
    });
    for (const auto& id : bell_identity_names())
        c.guarded(id + " n<=" + std::to_string(nmax), [&](std::string& d) {
            for (int trial = 0; trial < 5; ++trial) {
                auto xs = random_xs(rng, nmax + 1);
                for (int n = 0; n <= nmax; ++n)
                    for (int k = 0; k <= n; ++k) {
                        if (!bell_identity_applicable(id, n, k)) continue;
                        const int k2max = id == "id2" ? n - k : 1;
                        for (int k2 = id == "id2" ? 0 : 1; k2 <= k2max; ++k2)
                            if (!verify_bell_identity(id, n, k, xs, k2)) {
                                d = "n=" + std::to_string(n) + " k=" + std::to_string(k);
                                return false;
                            }
                    }
            }
            return true;
        });
    c.guarded("lift and resummation", [&](std::string& d) {
        IdentityReport r = verify_coro_pipeline(std::max(2, std::min(order, 24)));
        d = r.detail;
        return r.ok;
    });
}

void diffeo_suite(Collector& c, int order, std::mt19937_64& rng) {
    const int N = std::max(2, std::min(order, kMaxDiffeoN));
    c.guarded("closed form = inverse, 20 diffeomorphisms", [&](std::string& d) {
        for (int t = 0; t < 20; ++t) {
            Diffeomorphism f = random_diffeomorphism(1 + t % 6, rng);
            auto b = b_sequence(f, N);
            for (int n = 1; n <= N; ++n)
                if (b_closed_form(f, n) != b[n - 1]) {
                    d = f.to_string() + " n=" + std::to_string(n);
                    return false;
                }
        }
        return true;
    });
    c.guarded("recurrences", [&](std::string& d) {
        for (int t = 0; t < 5; ++t) {
            Diffeomorphism f = random_diffeomorphism(1 + t, rng);
            if (!verify_recurrences(f, N).ok) {
                d = f.to_string();
                return false;
            }
        }
        return true;
    });
    c.guarded("differential equations", [&](std::string& d) {
        for (int t = 0; t < 5; ++t) {
            Diffeomorphism f = random_diffeomorphism(1 + t, rng);
            if (!verify_ode(f, N)) {
                d = f.to_string();
                return false;
            }
        }
        return true;
    });
    c.guarded("momentum recursion, 3 kinematics, n<=5", [&](std::string& d) {
        for (int t = 0; t < 3; ++t) {
            Diffeomorphism f = random_diffeomorphism(4, rng);
            for (int n = 1; n <= 5; ++n) {
                const Rational want = b_inverse(f, n);
                for (int s = 0; s < 3; ++s) {
                    Rational got;
                    for (int attempt = 0;; ++attempt) {
                        try {
                            got = amplitude_recursion(f, n, random_kinematics(n, rng));
                            break;
                        } catch (const std::domain_error&) {
                            if (attempt > 10) throw;
                        }
                    }
                    if (got != want) {
                        d = f.to_string() + " n=" + std::to_string(n);
                        return false;
                    }
                }
            }
        }
        return true;
    });
    c.guarded("negative controls fail", [&](std::string& d) {
        Diffeomorphism f({1, 1});
        auto b = b_sequence(f, 6);
        b[2] += 1;
        Diffeomorphism g({1, Rational(1, 2), Rational(1, 3)});
        bool rec_fails = !verify_recurrences(f, b, 6).ok;
        bool ode_fails = !ode_residuals(g, g.series(14), 12).first.is_zero();
        d = std::string("perturbed b ") + (rec_fails ? "rejected" : "accepted") + ", F in place of G " +
            (ode_fails ? "rejected" : "accepted");
        return rec_fails && ode_fails;
    });
}

void yukawa_suite(Collector& c, int order) {
    std::vector<std::vector<Tadpole>> tad(5);
    c.guarded("tadpole counts 1,1,4,27", [&](std::string& d) {
        const std::vector<std::size_t> want{0, 1, 1, 4, 27};
        for (int n = 1; n <= 4; ++n) {
            tad[n] = enumerate_tadpoles(n);
            if (tad[n].size() != want[n]) {
                d = "loops " + std::to_string(n) + ": " + std::to_string(tad[n].size());
                return false;
            }
        }
        return true;
    });
    c.guarded("psi roundtrip loops<=4", [&](std::string& d) {
        for (int n = 2; n <= 4; ++n) {
            for (int n1 = 1; n1 < n; ++n1)
                for (const auto& t1 : tad[n1])
                    for (const auto& t2 : tad[n - n1])
                        for (int v = 0; v < t2.vertex_count(); ++v) {
                            PsiSplit s = psi_inv(psi(t1, t2, v).t);
                            if (!(s.t1 == t1) || !(s.t2 == t2) || s.d != v) {
                                d = t1.literal() + " | " + t2.literal();
                                return false;
                            }
                        }
            for (const auto& t : tad[n]) {
                PsiSplit s = psi_inv(t);
                if (!(psi(s.t1, s.t2, s.d).t == t)) {
                    d = t.literal();
                    return false;
                }
            }
        }
        return true;
    });
    c.guarded("lambda bijection loops<=4", [&](std::string& d) {
        for (int n = 1; n <= 4; ++n) {
            std::set<ChordDiagram> img;
            for (const auto& t : tad[n]) {
                ChordDiagram g = lambda_bij(t);
                if (!is_connected(g) || g.size() != n || !(lambda_inv(g) == t)) {
                    d = t.literal();
                    return false;
                }
                img.insert(g);
            }
            if (img.size() != tad[n].size()) return false;
        }
        return true;
    });
    c.guarded("quenched QED primitive counts", [&](std::string& d) {
        const std::vector<int> want{0, 1, 1, 7, 63, 729};
        for (int loops = 1; loops <= 5; ++loops) {
            int prim = 0, bad = 0;
            enumerate_qqed(loops, [&](const QQEDVertexGraph& g) {
                bool p = qqed_primitive(g);
                if (p != is_k_connected(qqed_chord(g), 2)) ++bad;
                prim += p;
            });
            if (bad || prim != want[loops]) {
                d = "loops " + std::to_string(loops) + ": " + std::to_string(prim);
                return false;
            }
        }
        return true;
    });
    for (const auto& r : green_identities(std::max(2, std::min(order, 32)))) c.add("green " + r.name, r.ok, r.detail);
    for (const auto& row : green_rows())
        c.guarded("table row " + row.label, [&](std::string& d) {
            d = check_green_row(row);
            return d.empty();
        });
}

}  // namespace

std::vector<CheckResult> run_suite(const std::string& suite, int order, std::uint64_t seed) {
    if (order < 1 || order > kMaxSeriesOrder) throw std::invalid_argument("order must be in 1..64");
    std::mt19937_64 rng(seed);
    Collector c{suite, {}};
    if (suite == "chord")
        chord_suite(c, order);
    else if (suite == "bell")
        bell_suite(c, order, rng);
    else if (suite == "diffeo")
        diffeo_suite(c, order, rng);
    else if (suite == "yukawa")
        yukawa_suite(c, order);
    else
        throw std::invalid_argument("unknown suite: " + suite);
    return c.out;
}

// ----------------------------------------------------------------- commands

namespace {

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> v;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) v.push_back(std::stoi(item));
    if (v.empty()) throw std::invalid_argument("empty list: " + s);
    return v;
}

std::vector<Rational> parse_rational_list(const std::string& s) {
    std::vector<Rational> v;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) v.push_back(parse_rational(item));
    return v;
}

using Row = std::vector<std::string>;

Rational amplitude_resampled(const Diffeomorphism& f, int n, std::mt19937_64& rng) {
    for (int attempt = 0;; ++attempt) {
        try {
            return amplitude_recursion(f, n, random_kinematics(n, rng));
        } catch (const std::domain_error&) {
            if (attempt > 10) throw;
        }
    }
}

OutputRecord cmd_series(const std::string& name, int order, const std::string& format) {
    if (order < 0 || order > kMaxSeriesOrder) throw std::invalid_argument("order must be in 0..64");
    Series s = named_series(name, order);
    OutputRecord r{"series", {{"name", name}, {"order", std::to_string(order)}}, {"n", "coefficient"}, {}};
    int start = format == "bfile" ? std::min(s.valuation(), order) : 0;
    for (int i = start; i <= order; ++i) r.rows.push_back({std::to_string(i), to_string(s[i])});
    return r;
}

OutputRecord cmd_enumerate(const std::string& kind, int n, bool allow_five) {
    OutputRecord r{"enumerate", {{"kind", kind}, {"n", std::to_string(n)}}, {}, {}};
    const int limit = enumeration_limit();
    if (n < 1) throw std::invalid_argument("n must be positive");
    if (kind == "diagrams") {
        if (n > limit) throw std::invalid_argument("n exceeds the enumeration limit " + std::to_string(limit));
        r.columns = {"n", "total", "connected", "two_connected", "connectivity_one", "indecomposable"};
        for (int m = 1; m <= n; ++m) {
            ClassCounts k = classify_all(m, limit);
            r.rows.push_back({std::to_string(m), std::to_string(k.total), std::to_string(k.connected),
                              std::to_string(k.two_connected), std::to_string(k.connectivity_one),
                              std::to_string(k.indecomposable)});
        }
    } else if (kind == "tadpoles") {
        r.columns = {"index", "tadpole", "chord_diagram"};
        int i = 0;
        for (const auto& t : enumerate_tadpoles(n, allow_five))
            r.rows.push_back({std::to_string(++i), t.literal(), lambda_bij(t).literal()});
    } else if (kind == "qqed") {
        if (2 * n + 1 > 2 * limit) throw std::invalid_argument("loop number exceeds the enumeration limit");
        r.columns = {"loops", "chords", "graphs", "one_pi", "primitive"};
        for (int loops = 1; loops <= n; ++loops) {
            long total = 0, pi = 0, prim = 0;
            enumerate_qqed(loops, [&](const QQEDVertexGraph& g) {
                ++total;
                pi += qqed_is_1pi(g);
                prim += qqed_primitive(g);
            });
            r.rows.push_back({std::to_string(loops), std::to_string(loops + 1), std::to_string(total),
                              std::to_string(pi), std::to_string(prim)});
        }
    } else {
        throw std::invalid_argument("unknown enumeration kind: " + kind + " (diagrams, tadpoles, qqed)");
    }
    return r;
}

OutputRecord cmd_bijection(const std::string& kind, const std::string& input, const std::string& c1,
                           const std::string& c2, int k) {
    OutputRecord r{"bijection", {{"kind", kind}, {"input", input}}, {"field", "value"}, {}};
    auto need = [&](const std::string& v, const char* what) {
        if (v.empty()) throw std::invalid_argument(std::string("bijection ") + kind + " needs " + what);
        return v;
    };
    if (kind == "phi") {
        r.rows.push_back({"phi", phi(ChordDiagram::parse(need(input, "--input"))).literal()});
    } else if (kind == "phi-inv") {
        r.rows.push_back({"phi_inv", phi_inv(ChordDiagram::parse(need(input, "--input"))).literal()});
    } else if (kind == "nabla") {
        RootShareTriple t = nabla(ChordDiagram::parse(need(input, "--input")));
        r.rows = {{"c1", t.c1.literal()}, {"c2", t.c2.literal()}, {"k", std::to_string(t.k)}};
    } else if (kind == "nabla-inv") {
        RootShareTriple t{ChordDiagram::parse(need(c1, "--c1")), ChordDiagram::parse(need(c2, "--c2")), k};
        r.rows.push_back({"nabla_inv", nabla_inv(t).literal()});
    } else if (kind == "theta") {
        Seed s = Seed::from_diagram(ChordDiagram::parse(need(input, "--input")));
        ZTree t = theta(s);
        r.rows = {{"tree", t.serialize()}, {"roundtrip", theta_inv(t) == s ? "ok" : "FAILED"}};
    } else if (kind == "lambda") {
        Tadpole t = canonical(Tadpole::parse(need(input, "--input")));
        r.rows = {{"canonical", t.literal()}, {"lambda", lambda_bij(t).literal()}};
    } else if (kind == "lambda-inv") {
        r.rows.push_back({"tadpole", lambda_inv(ChordDiagram::parse(need(input, "--input"))).literal()});
    } else if (kind == "psi-inv") {
        PsiSplit s = psi_inv(canonical(Tadpole::parse(need(input, "--input"))));
        r.rows = {{"t1", s.t1.literal()},
                  {"t2", s.t2.literal()},
                  {"d", std::to_string(s.d + 1)},
                  {"bridge_steps", std::to_string(s.bridge_steps)}};
    } else if (kind == "psi-order") {
        Tadpole t = canonical(Tadpole::parse(need(input, "--input")));
        auto p = psi_order(t);
        r.columns = {"vertex", "order"};
        for (int v = 0; v < t.vertex_count(); ++v) r.rows.push_back({std::to_string(v + 1), std::to_string(p[v])});
    } else {
        throw std::invalid_argument("unknown bijection: " + kind);
    }
    return r;
}

OutputRecord cmd_bell(int n, int k, const std::string& xcsv, const std::string& identity, int k2) {
    std::vector<Rational> xs = parse_rational_list(xcsv);
    OutputRecord r{"bell", {{"n", std::to_string(n)}, {"k", std::to_string(k)}, {"x", xcsv}}, {"field", "value"}, {}};
    if (identity.empty()) {
        r.rows.push_back({"bell", to_string(bell_partial(n, k, xs))});
        if (n <= 12) r.rows.push_back({"partition sum", to_string(bell_partial_oracle(n, k, xs))});
    } else {
        r.parameters.push_back({"identity", identity});
        BellSides s = bell_identity_sides(identity, n, k, xs, k2);
        r.rows = {{"lhs", to_string(s.lhs)}, {"rhs", to_string(s.rhs)}, {"holds", s.lhs == s.rhs ? "yes" : "no"}};
    }
    return r;
}

OutputRecord cmd_asym(const std::string& series, const std::string& ns, const std::string& Rs, bool probability) {
    OutputRecord r{"asym", {{"series", series}, {"n", ns}}, {}, {}};
    if (probability) {
        r.columns = {"n", "probability"};
        for (int n : parse_int_list(ns)) r.rows.push_back({std::to_string(n), to_string(count_probability(series, n), 10)});
        return r;
    }
    r.parameters.push_back({"R", Rs});
    r.columns = {"n", "R", "scaled_remainder", "next_term", "relative_deviation"};
    for (int n : parse_int_list(ns))
        for (int R : parse_int_list(Rs)) {
            FitReport f = asymptotic_fit(series, n, R);
            r.rows.push_back({std::to_string(n), std::to_string(R), to_string(f.scaled_remainder, 10),
                              to_string(f.next_term, 10), to_string(f.relative_deviation, 6)});
        }
    return r;
}

OutputRecord cmd_diffeo(const std::string& acsv, int n, const std::string& kinematics, std::uint64_t seed) {
    Diffeomorphism f = Diffeomorphism::parse(acsv);
    OutputRecord r{"diffeo", {{"a", f.to_string()}, {"n", std::to_string(n)}}, {"n", "closed_form", "inverse"}, {}};
    std::mt19937_64 rng(seed);
    bool kin = !kinematics.empty();
    if (kin) {
        if (kinematics.rfind("seed=", 0) == 0) {
            seed = std::stoull(kinematics.substr(5));
            rng.seed(seed);
        } else if (kinematics != "random") {
            throw std::invalid_argument("--kinematics must be random or seed=K");
        }
        r.parameters.push_back({"kinematics seed", std::to_string(seed)});
        r.columns.push_back("amplitude");
    }
    auto b = b_sequence(f, n);
    for (int m = 1; m <= n; ++m) {
        Row row{std::to_string(m), to_string(b_closed_form(f, m)), to_string(b[m - 1])};
        if (kin) row.push_back(m <= kMaxAmplitudeN ? to_string(amplitude_resampled(f, m, rng)) : "-");
        r.rows.push_back(row);
    }
    return r;
}

OutputRecord cmd_oeis(const std::string& name, const std::string& path, std::string sequence, bool* all_match) {
    const OeisOffset* off = nullptr;
    for (const auto& o : oeis_offsets())
        if (o.series == name && (sequence.empty() || o.sequence == sequence)) off = &o;
    if (!off) throw std::invalid_argument("no declared OEIS offset for series " + name);
    auto entries = read_bfile(path);
    OutputRecord r{"oeis-compare",
                   {{"series", name}, {"sequence", off->sequence}, {"shift", std::to_string(off->shift)}},
                   {"bfile_index", "series_index", "bfile_value", "computed", "status"},
                   {}};
    Series s = named_series(name, kMaxSeriesOrder);
    *all_match = true;
    int compared = 0;
    for (const auto& e : entries) {
        long idx = e.index + off->shift;
        std::string status, computed = "-";
        if (e.index < off->first_index || idx < 0) {
            status = "skipped";
        } else if (idx > kMaxSeriesOrder) {
            status = "beyond order";
        } else {
            computed = to_string(s[static_cast<int>(idx)]);
            status = computed == e.value ? "match" : "MISMATCH";
            ++compared;
            if (status != "match") *all_match = false;
        }
        r.rows.push_back({std::to_string(e.index), std::to_string(idx), e.value, computed, status});
    }
    if (compared == 0) *all_match = false;
    return r;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"chordlab: chord diagram combinatorics and its field-theory applications"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string format = "table";
    std::uint64_t seed = kDefaultSeed;
    app.add_option("--format", format, "table, json, csv or bfile")
        ->check(CLI::IsMember({"table", "json", "csv", "bfile"}));
    app.add_option("--seed", seed, "seed for randomized checks (default " + std::to_string(kDefaultSeed) + ")");

    std::string name, kind, input, c1, c2, xcsv, identity, ns = "20,30,40", Rs = "1,2,3,4,5", acsv, kinematics,
                                                              bfile, sequence, suite;
    int order = 10, n = 4, k = 1, k2 = 1;
    bool allow_five = false, probability = false;

    auto* s_series = app.add_subcommand("series", "print a generating series");
    s_series->add_option("name", name, "series name")->required();
    s_series->add_option("--order", order, "last coefficient");

    auto* s_enum = app.add_subcommand("enumerate", "exhaustive enumeration");
    s_enum->add_option("kind", kind, "diagrams, tadpoles or qqed")->required();
    s_enum->add_option("--n", n, "chords or loops");
    s_enum->add_flag("--allow-five", allow_five, "allow five-loop tadpoles");

    auto* s_bij = app.add_subcommand("bijection", "run one bijection");
    s_bij->add_option("kind", kind, "phi, phi-inv, nabla, nabla-inv, theta, lambda, lambda-inv, psi-inv, psi-order")
        ->required();
    s_bij->add_option("--input", input, "diagram or tadpole literal");
    s_bij->add_option("--c1", c1);
    s_bij->add_option("--c2", c2);
    s_bij->add_option("--k", k);

    auto* s_bell = app.add_subcommand("bell", "partial Bell polynomials and identities");
    s_bell->add_option("--n", n)->required();
    s_bell->add_option("--k", k)->required();
    s_bell->add_option("--x", xcsv, "x_1,x_2,...")->required();
    s_bell->add_option("--identity", identity);
    s_bell->add_option("--k2", k2);

    auto* s_asym = app.add_subcommand("asym", "asymptotic fit table");
    s_asym->add_option("series", name, "C or C2")->required();
    s_asym->add_option("--n", ns, "comma separated");
    s_asym->add_option("--R", Rs, "comma separated");
    s_asym->add_flag("--probability", probability, "print count / (2n-1)!! instead");

    auto* s_diffeo = app.add_subcommand("diffeo", "tree-level amplitudes of a field diffeomorphism");
    s_diffeo->add_option("--a", acsv, "1,a1,a2,...")->required();
    s_diffeo->add_option("--n", n);
    s_diffeo->add_option("--kinematics", kinematics, "random or seed=K");

    auto* s_verify = app.add_subcommand("verify", "run verification suites");
    s_verify->add_option("suite", suite, "chord, bell, diffeo, yukawa or all")->required();
    s_verify->add_option("--order", order);

    auto* s_oeis = app.add_subcommand("oeis-compare", "compare a series with a local b-file");
    s_oeis->add_option("name", name, "series name")->required();
    s_oeis->add_option("--bfile", bfile)->required();
    s_oeis->add_option("--sequence", sequence, "OEIS id, when several are declared");

    std::vector<std::string> store{"chordlab"};
    store.insert(store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : store) argv.push_back(s.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        OutputRecord r;
        int code = 0;
        if (s_series->parsed()) {
            r = cmd_series(name, order, format);
        } else if (s_enum->parsed()) {
            r = cmd_enumerate(kind, n, allow_five);
        } else if (s_bij->parsed()) {
            r = cmd_bijection(kind, input, c1, c2, k);
        } else if (s_bell->parsed()) {
            r = cmd_bell(n, k, xcsv, identity, k2);
        } else if (s_asym->parsed()) {
            r = cmd_asym(name, ns, Rs, probability);
        } else if (s_diffeo->parsed()) {
            r = cmd_diffeo(acsv, n, kinematics, seed);
            r.parameters.push_back({"seed", std::to_string(seed)});
        } else if (s_verify->parsed()) {
            std::vector<std::string> suites = suite == "all" ? suite_names() : std::vector<std::string>{suite};
            r = OutputRecord{"verify", {{"suite", suite}, {"order", std::to_string(order)}, {"seed", std::to_string(seed)}},
                             {"suite", "check", "status", "detail"}, {}};
            for (const auto& s : suites)
                for (const auto& c : run_suite(s, order, seed)) {
                    r.rows.push_back({c.suite, c.name, c.ok ? "pass" : "FAIL", c.detail});
                    if (!c.ok) code = 1;
                }
        } else if (s_oeis->parsed()) {
            bool ok = false;
            r = cmd_oeis(name, bfile, sequence, &ok);
            code = ok ? 0 : 1;
        }
        out << render(r, format);
        return code;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace chordlab
