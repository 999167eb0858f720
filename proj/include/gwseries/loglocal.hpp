#pragma once

#include "gwseries/genus_series.hpp"
#include "gwseries/invariant_store.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gwseries {

// sign * Q^E * unsigned_part with sign = (-1)^(E.E).
struct QTilde {
    int sign = 1;
    NovikovSeries unsigned_part;
};

// Reads genus-0 LogMax values strictly for classes up to degree_cap - deg(E).
QTilde qtilde_series(const Lookup& r0, int degree_cap);

// sum_{k | n} 1/k for n = 1..nmax
std::vector<Rational> elliptic_g1_series(int nmax);

struct Delta1Term {
    int n = 0;
    Rational divisor_sum;
    int sign = 1;
    Rational exp_coefficient;
};

Rational delta1(const CurveClass& beta, const Lookup& r0, std::vector<Delta1Term>* trace = nullptr);

// LHS - RHS of the genus-1 log-local relation at beta.
Rational genus1_loglocal(const CurveClass& beta, const Rational& n1_local, const Rational& r1, const Lookup& r0);

enum class AutMode { at_most, exactly };

// prod_i p(a_i, g_i), p counting partitions of a_i into at most (or exactly) g_i parts.
long long aut_factor(const std::vector<int>& a, const std::vector<int>& gs, AutMode mode = AutMode::at_most);

struct DeltaOptions {
    int nmax = -1; // number of parts; negative means unbounded
    AutMode aut = AutMode::at_most;
    Exec exec = Exec::parallel;
    std::optional<GenusSeries> k1; // defaults to kernel_k1
};

struct DeltaTerm {
    int d_e = 0;
    std::vector<CurveClass> parts;
    int h = 0;
    std::vector<int> genera;
    std::vector<int> a;
    int m = 0;
    Rational weight;
    Rational stationary;
    Rational product;
    Rational contribution;
};

std::string to_string(const DeltaTerm& t);

// Elliptic correction sum at genus g over decompositions of beta.
Rational stationary_sum(const CurveClass& beta, int g, const Lookup& lookup, const DeltaOptions& opts = {},
                        std::vector<DeltaTerm>* trace = nullptr);

namespace reference {
Rational stationary_sum(const CurveClass& beta, int g, const Lookup& lookup, const DeltaOptions& opts = {});
} // namespace reference

// The discrepancy series through u^genus_cap for the class gamma of the
// blow-up (tangency gamma.E + 1 on the base surface).
GenusSeries delta_series(const CurveClass& gamma, int genus_cap, const Lookup& lookup, const DeltaOptions& opts = {},
                         std::vector<DeltaTerm>* trace = nullptr);
Rational delta_full(const CurveClass& gamma, int g, const Lookup& lookup, const DeltaOptions& opts = {});

} // namespace gwseries
