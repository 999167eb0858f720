#include "gwseries/degeneration.hpp"

#include "gwseries/errors.hpp"
#include "gwseries/surface_lattice.hpp"

#include <algorithm>

namespace gwseries {

namespace {

void check_input(const DegenerationInput& inp) {
    if (inp.e < 2) {
        throw InvalidTangency("degeneration needs e >= 2, got " + std::to_string(inp.e));
    }
}

int working_cap(const DegenerationInput& inp) {
    return std::min(inp.genus_cap, inp.r_two_point.cap());
}

} // namespace

GenusSeries assemble_Nz(const DegenerationInput& inp) {
    check_input(inp);
    const int cap = working_cap(inp);
    GenusSeries vertices = gs_mul(kernel_v2(inp.e, cap), kernel_v3(cap));
    return gs_scale(gs_mul(inp.r_two_point.truncated(cap), vertices), Rational(inp.e - 1));
}

GenusSeries assemble_Nz(int e, const GenusSeries& r_two_point) {
    return assemble_Nz(DegenerationInput{e, r_two_point, r_two_point.cap()});
}

GenusSeries reference::assemble_Nz(const DegenerationInput& inp) {
    check_input(inp);
    const int cap = working_cap(inp);
    const GenusSeries v2 = kernel_v2(inp.e, cap);
    const GenusSeries v3 = kernel_v3(cap);
    std::vector<Rational> out(static_cast<std::size_t>(cap + 1));
    for (int g = 0; g <= cap; ++g) {
        for (int g1 = 0; g1 <= g; ++g1) {
            for (int g2 = 0; g1 + g2 <= g; ++g2) {
                int g3 = g - g1 - g2;
                out[static_cast<std::size_t>(g)] +=
                    inp.r_two_point.coefficient(g1) * v2.coefficient(g2) * v3.coefficient(g3);
            }
        }
        out[static_cast<std::size_t>(g)] *= inp.e - 1;
    }
    return GenusSeries::from_coefficients(std::move(out));
}

Rational genus1_v3_direct_check(const Rational& lines_through_two_points) {
    // lambda_1 = delta_0 / 12 on M_{1,1}; resolving the node of the nodal
    // cubic gives two labellings of the new markings and a diagonal insertion
    // (ev_3 x ev_4)^*(D x D) on the genus-0 space of the line class.
    const Rational hodge(-1, 12);
    const Rational labellings(1, 2);

    // Kunneth pieces of the diagonal of F1: 1 x pt and pt x 1 vanish by the
    // fundamental class axiom; the divisor pieces D x D^dual (orthogonal basis,
    // so D^dual = D / D.D) reduce by the divisor axiom to (line . D)^2 / D.D
    // times the two-point count.
    const SurfacePreset& f1 = preset_f1();
    const CurveClass line = blowup_class_map(1) + CurveClass{1, 0}; // pullback of H
    const CurveClass exceptional{1, 0};
    Rational diagonal(0);
    for (const CurveClass& divisor : {line, exceptional}) {
        const int d = cc_dot(f1, line, divisor);
        diagonal += Rational(d * d, 1) / cc_dot(f1, divisor, divisor) * lines_through_two_points;
    }
    return labellings * hodge * diagonal;
}

} // namespace gwseries
