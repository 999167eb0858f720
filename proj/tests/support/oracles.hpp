#pragma once

// Independent re-derivations used as test oracles. Nothing here calls the
// library's series arithmetic, enumeration or correction code; only the
// plain data types are shared.

#include "gwseries/invariant_store.hpp"
#include "gwseries/rational.hpp"
#include "gwseries/surface_lattice.hpp"

#include <functional>
#include <vector>

namespace oracle {

using gwseries::CurveClass;
using gwseries::Rational;
using gwseries::SurfacePreset;

using Poly = std::vector<Rational>; // coefficients of u^0, u^1, ...

Poly poly_mul(const Poly& a, const Poly& b, int cap);
Poly poly_inverse(const Poly& a, int cap);

// (2 sin(k hbar/2))^(2g-2) via 2 - 2cos; entry i is the coefficient of u^(i-1).
Poly sin_power_shifted(int g, int k, int cap);

// Coefficient of hbar^(2n) of (hbar/2) csc(a hbar/2), from Bernoulli numbers.
Rational half_csc_coefficient(int a, int n);
Rational bernoulli(int n);

// 2 sin(hbar/2)/hbar from the sine Taylor series.
Poly v3_coefficients(int cap);
// ((-1)^e/(e-1)) (hbar/2) csc((e-1) hbar/2)
Poly v2_coefficients(int e, int cap);

long long partitions_brute(int n, int max_parts, bool exact);

// Ordered tuples of nonzero effective classes with positive tangency summing to target.
void for_each_ordered_tuple(const SurfacePreset& p, const CurveClass& target, int max_len,
                            const std::function<void(const std::vector<CurveClass>&)>& f);

// Decomposition count by canonicalising every ordered tuple found in a box.
std::size_t decomposition_count_brute(const SurfacePreset& p, const CurveClass& beta, int nmax);

// x_beta = (-1)^{beta.E} (beta.E) R_0(beta)
using R0Fn = std::function<Rational(const CurveClass&)>;

// sum_n sigma_{-1}(n) (-1)^{(E.E) n} [Q^{beta - nE}] exp(n sum x Q), the exponential
// expanded as ordered tuples over k!.
Rational delta1_brute(const SurfacePreset& p, const CurveClass& beta, const R0Fn& r0);

// Elliptic correction sum at genus g by ordered tuples over n!.
using RFn = std::function<Rational(const CurveClass&, int genus)>;
using StationaryFn = std::function<Rational(int h, const std::vector<int>& a, int m, int d)>;
Rational stationary_sum_brute(const SurfacePreset& p, const CurveClass& beta, int g, const RFn& r,
                              const StationaryFn& stationary);

// Genus-1 stationary values of the elliptic curve with point insertions and no
// descendants: -1/24 at degree 0 with one marking, 0 at degree 0 with more,
// d^n sigma_{-1}(d) in degree d >= 1.
Rational elliptic_genus1_points(int n, int d);

// The coefficients -sum_m log(1 - x^m) through x^nmax, by expanding each log.
std::vector<Rational> minus_log_euler(int nmax);

} // namespace oracle
