#pragma once

#include <functional>
#include <string>
#include <vector>

#include "chordlab/fps.hpp"

namespace chordlab {

// D: all diagrams, C: connected, C1: connectivity exactly 1, C2: 2-connected,
// I: indecomposable (with the empty one), I0: nonempty indecomposable,
// Dleq2: at most two components, A = (1+C)^2, B_lemmaB: root-insertion pairs,
// S: sequences of 2-connected diagrams by one less chord, Z = x/(1-I0)^2,
// B_chapter3 = Dleq2 + x.
enum class SeriesName { D, C, C1, C2, I, I0, Dleq2, A, B_lemmaB, S, Z, B_chapter3 };

inline constexpr int kMaxSeriesOrder = 64;

const std::vector<std::string>& series_names();
SeriesName parse_series_name(const std::string& name);
std::string series_name_string(SeriesName n);

// Memoized per (name, order); thread safe.
Series named_series(SeriesName name, int order);
Series named_series(const std::string& name, int order);

Series series_D(int order);
Series series_C(int order);
Series series_C1(int order);
Series series_C2(int order);
Series series_I(int order);
Series series_I0(int order);
Series series_Dleq2(int order);
Series series_A(int order);
Series series_B_lemmaB(int order);
Series series_S(int order);
Series series_Z(int order);
Series series_B_chapter3(int order);

// [C2(t)/t^2] at t = C^2/x.
Series series_C2_over_t2_at_u(int order);

struct IdentityReport {
    std::string name;
    bool ok = false;
    int checked_order = 0;
    int first_failure = -1;  // coefficient index, -1 if none
    std::string detail;
};

const std::vector<std::string>& identity_names();
// Throws std::invalid_argument on an unknown name or order > kMaxSeriesOrder.
IdentityReport verify_identity(const std::string& name, int order);
// Compares two series coefficientwise on 0..min order.
IdentityReport compare_series(const std::string& name, const Series& lhs, const Series& rhs);

// Printed reference rows: expected[k] is the coefficient of x^(first + k).
struct ReferenceRow {
    std::string group;
    std::string label;
    int first = 0;
    std::vector<Rational> expected;
    std::function<Series(int)> compute;
};
const std::vector<ReferenceRow>& reference_rows();
// Empty string on success, otherwise a description of the first mismatch.
std::string check_reference_row(const ReferenceRow& row);

}  // namespace chordlab
