#pragma once

#include "gwseries/genus_series.hpp"

namespace gwseries {

struct DegenerationInput {
    int e = 2; // tangency of the class with the anticanonical curve
    GenusSeries r_two_point;
    int genus_cap = 0;
};

// (e-1) * R * V2(e) * V3, truncated to the genus cap.
GenusSeries assemble_Nz(const DegenerationInput& inp);
GenusSeries assemble_Nz(int e, const GenusSeries& r_two_point);

namespace reference {
// Explicit triple sum over g1 + g2 + g3 = g.
GenusSeries assemble_Nz(const DegenerationInput& inp);
} // namespace reference

// The genus-1 coefficient of the V3 series evaluated through lambda_1 = delta_0/12
// on the moduli of genus-1 curves with two marked points.
Rational genus1_v3_direct_check(const Rational& lines_through_two_points = 1);

} // namespace gwseries
