#pragma once

#include "gwseries/genus_series.hpp"
#include "gwseries/invariant_store.hpp"

namespace gwseries {

// Multiple-cover resummation of GvLocal entries into the local GW series.
// The output genus cap is one below the table's (the u-power of genus g is
// g - 1).
NovikovSeries gv_to_gw(const InvariantTable& n, Exec exec = Exec::parallel);
// Inverse, by induction on degree then genus. Output genus cap is F's cap + 1.
InvariantTable gw_to_gv(const NovikovSeries& F);

// The u^(g-1) coefficients N_0..N_genus_cap of the local GW series at one
// class, reading GvLocal entries strictly at every divisor class.
GenusSeries local_gw_at(const Lookup& lookup, const CurveClass& cls, int genus_cap);

// n_1 = N_1 - N_0/12 at a primitive class.
Rational genus1_gv_closed_form(const Rational& n0, const Rational& n1);

// Entrywise (-1)^(g+1); GvLocal <-> OpenBps.
InvariantTable open_closed_sign(const InvariantTable& n);

// Genus-0 log-local conversion at tangency beta.E.
Rational loglocal_g0(const SurfacePreset& p, const CurveClass& beta, const Rational& n0_local);
Rational loglocal_g0_inverse(const SurfacePreset& p, const CurveClass& beta, const Rational& r0);

Rational two_point_from_local_g0(int e, const Rational& n0_hat);

// Two-point series -> one-point series on the blow-up, and back.
GenusSeries hat_relation(const GenusSeries& r_two_point, const GenusSeries& k1);
GenusSeries hat_relation(const GenusSeries& r_two_point);
GenusSeries hat_relation_inverse(const GenusSeries& r_hat);

} // namespace gwseries
