#include "gwseries/loglocal.hpp"

#include "gwseries/errors.hpp"
#include "gwseries/transforms.hpp"

#include <functional>
#include <numeric>
#include <sstream>

namespace gwseries {

namespace {

// sum_{beta' in classes, beta'.E > 0} (-1)^{beta'.E} (beta'.E) R_0(beta') Q^{beta'}
NovikovSeries weighted_r0(const Lookup& r0, const std::vector<CurveClass>& classes, int degree_cap) {
    const SurfacePreset& p = r0.preset();
    NovikovSeries out(p, degree_cap, 0);
    for (const auto& c : classes) {
        if (c.is_zero() || cc_degree(p, c) > degree_cap) {
            continue;
        }
        const int t = cc_tangency(p, c);
        if (t <= 0) {
            continue;
        }
        const Rational& r = r0.require(InvariantKind::LogMax, c, 0);
        out.add(c, GenusSeries::constant(sign_power(t) * t * r, 0));
    }
    out.prune_zeros();
    return out;
}

long long partitions_at_most(int n, int k) {
    if (n < 0) {
        return 0;
    }
    // ways[j] = partitions of j into parts of size <= k (= at most k parts)
    std::vector<long long> ways(static_cast<std::size_t>(n + 1), 0);
    ways[0] = 1;
    for (int part = 1; part <= k; ++part) {
        for (int j = part; j <= n; ++j) {
            ways[static_cast<std::size_t>(j)] += ways[static_cast<std::size_t>(j - part)];
        }
    }
    return ways[static_cast<std::size_t>(n)];
}

long long multiset_symmetry(const std::vector<CurveClass>& parts) {
    long long sym = 1;
    std::size_t i = 0;
    while (i < parts.size()) {
        std::size_t j = i;
        while (j < parts.size() && parts[j] == parts[i]) {
            ++j;
        }
        for (std::size_t r = 2; r <= j - i; ++r) {
            sym *= static_cast<long long>(r);
        }
        i = j;
    }
    return sym;
}

// Calls f(v) for every vector of `len` nonnegative integers with sum == total.
void for_each_composition(int len, int total, const std::function<void(const std::vector<int>&)>& f) {
    std::vector<int> v(static_cast<std::size_t>(len), 0);
    std::function<void(int, int)> rec = [&](int i, int left) {
        if (i == len) {
            if (left == 0) {
                f(v);
            }
            return;
        }
        for (int x = 0; x <= left; ++x) {
            v[static_cast<std::size_t>(i)] = x;
            rec(i + 1, left - x);
        }
    };
    rec(0, total);
}

// Every vector of `len` nonnegative integers with sum <= bound.
void for_each_bounded(int len, int bound, const std::function<void(const std::vector<int>&)>& f) {
    for (int total = 0; total <= bound; ++total) {
        for_each_composition(len, total, f);
    }
}

// Contribution of one decomposition to the genus-g correction sum.
Rational decomposition_sum(const Decomposition& dec, int g, const Lookup& lookup, const DeltaOptions& opts,
                           std::vector<DeltaTerm>* trace) {
    const SurfacePreset& p = lookup.preset();
    const int ee = cc_self_intersection_e(p);
    const int n = static_cast<int>(dec.parts.size());
    const long long sym = multiset_symmetry(dec.parts);
    Rational total(0);
    if (2 * g - 2 < 0) {
        return total;
    }
    for (int h = 0; h <= g; ++h) {
        if (n == 0 && h != g) {
            continue;
        }
        for_each_composition(n, g - h, [&](const std::vector<int>& genera) {
            for_each_bounded(n, 2 * g - 2, [&](const std::vector<int>& a) {
                const long long aut = aut_factor(a, genera, opts.aut);
                if (aut == 0) {
                    return;
                }
                const int m = 2 * g - 2 - std::accumulate(a.begin(), a.end(), 0);
                const Rational stationary = lookup.stationary(StationaryKey(h, a, m, dec.d_e));
                if (stationary == 0) {
                    return;
                }
                Rational product(1);
                for (int j = 0; j < n; ++j) {
                    const CurveClass& part = dec.parts[static_cast<std::size_t>(j)];
                    const int t = cc_tangency(p, part);
                    product *= sign_power(t) * t *
                               lookup.require(InvariantKind::LogMax, part, genera[static_cast<std::size_t>(j)]);
                }
                mpz_class ee_pow;
                mpz_pow_ui(ee_pow.get_mpz_t(), mpz_class(ee).get_mpz_t(), static_cast<unsigned long>(m));
                const Rational weight = sign_power(g - 1 + static_cast<long long>(ee) * dec.d_e) *
                                        Rational(ee_pow) /
                                        (factorial(static_cast<unsigned>(m)) * Rational(static_cast<long>(aut)) * Rational(static_cast<long>(sym)));
                const Rational contribution = weight * stationary * product;
                total += contribution;
                if (trace) {
                    trace->push_back(DeltaTerm{dec.d_e, dec.parts, h, genera, a, m, weight, stationary, product,
                                               contribution});
                }
            });
        });
    }
    return total;
}

int tangency_plus_one(const Lookup& lookup, const CurveClass& gamma) {
    const int e = cc_tangency(lookup.preset(), gamma) + 1;
    if (e < 2) {
        throw InvalidTangency("class " + to_string(gamma) + " gives e = " + std::to_string(e));
    }
    return e;
}

} // namespace

QTilde qtilde_series(const Lookup& r0, int degree_cap) {
    const SurfacePreset& p = r0.preset();
    const int ee = cc_self_intersection_e(p);
    const int inner_cap = degree_cap - cc_degree(p, p.anticanonical);
    QTilde out;
    out.sign = ee % 2 == 0 ? 1 : -1;
    out.unsigned_part = NovikovSeries(p, degree_cap, 0);
    if (inner_cap < 0) {
        return out;
    }
    NovikovSeries e = nv_exp(weighted_r0(r0, enumerate_effective_upto(p, inner_cap), inner_cap));
    for (const auto& [cls, s] : e.terms()) {
        out.unsigned_part.add(cls + p.anticanonical, s);
    }
    return out;
}

std::vector<Rational> elliptic_g1_series(int nmax) {
    std::vector<Rational> out;
    for (int n = 1; n <= nmax; ++n) {
        out.push_back(divisor_reciprocal_sum(n));
    }
    return out;
}

Rational delta1(const CurveClass& beta, const Lookup& r0, std::vector<Delta1Term>* trace) {
    const SurfacePreset& p = r0.preset();
    check_rank(p, beta);
    const int ee = cc_self_intersection_e(p);
    Rational total(0);
    for (int n = 1;; ++n) {
        const CurveClass rest = beta - n * p.anticanonical;
        if (!rest.is_effective()) {
            break;
        }
        Rational coeff(1);
        if (!rest.is_zero()) {
            const int cap = cc_degree(p, rest);
            NovikovSeries arg = nv_scale(weighted_r0(r0, enumerate_below(p, rest), cap), Rational(n));
            coeff = nv_exp(arg).coefficient(rest).coefficient(0);
        }
        const Rational sigma = divisor_reciprocal_sum(n);
        const int sign = (static_cast<long long>(ee) * n) % 2 == 0 ? 1 : -1;
        total += sigma * sign * coeff;
        if (trace) {
            trace->push_back(Delta1Term{n, sigma, sign, coeff});
        }
    }
    return total;
}

Rational genus1_loglocal(const CurveClass& beta, const Rational& n1_local, const Rational& r1, const Lookup& r0) {
    const SurfacePreset& p = r0.preset();
    const int t = cc_tangency(p, beta);
    if (t <= 0 || beta.is_zero()) {
        throw ZeroTangency("class " + to_string(beta) + " has tangency " + std::to_string(t));
    }
    const Rational& r0_beta = r0.require(InvariantKind::LogMax, beta, 0);
    const Rational rhs = sign_power(t + 1) * r1 / t + sign_power(t + 1) * t * r0_beta / 24 + delta1(beta, r0);
    return n1_local - rhs;
}

long long aut_factor(const std::vector<int>& a, const std::vector<int>& gs, AutMode mode) {
    if (a.size() != gs.size()) {
        throw std::invalid_argument("aut_factor: length mismatch");
    }
    long long f = 1;
    for (std::size_t i = 0; i < a.size(); ++i) {
        long long c = partitions_at_most(a[i], gs[i]);
        if (mode == AutMode::exactly) {
            c -= gs[i] > 0 ? partitions_at_most(a[i], gs[i] - 1) : 0;
        }
        f *= c;
    }
    return f;
}

std::string to_string(const DeltaTerm& t) {
    std::ostringstream out;
    out << "d_E=" << t.d_e << " parts={";
    for (std::size_t i = 0; i < t.parts.size(); ++i) {
        out << (i ? " " : "") << "(" << to_string(t.parts[i]) << ")";
    }
    out << "} h=" << t.h << " g=[";
    for (std::size_t i = 0; i < t.genera.size(); ++i) {
        out << (i ? "," : "") << t.genera[i];
    }
    out << "] a=[";
    for (std::size_t i = 0; i < t.a.size(); ++i) {
        out << (i ? "," : "") << t.a[i];
    }
    out << "] m=" << t.m << " weight=" << to_string(t.weight) << " N_E=" << to_string(t.stationary)
        << " R=" << to_string(t.product) << " term=" << to_string(t.contribution);
    return out.str();
}

Rational stationary_sum(const CurveClass& beta, int g, const Lookup& lookup, const DeltaOptions& opts,
                        std::vector<DeltaTerm>* trace) {
    const SurfacePreset& p = lookup.preset();
    if (g <= 0) {
        return 0;
    }
    const int nmax = opts.nmax < 0 ? std::max(cc_degree(p, beta), 0) : opts.nmax;
    const auto decs = decompose_for_delta(p, beta, nmax);
    std::vector<Rational> partial(decs.size());
    std::vector<KeyLog> logs(decs.size());
    std::vector<std::vector<DeltaTerm>> traces(trace ? decs.size() : 0);
    parallel_for(decs.size(), opts.exec, [&](std::size_t i) {
        Lookup local = lookup.with_log(lookup.log() ? &logs[i] : nullptr);
        partial[i] = decomposition_sum(decs[i], g, local, opts, trace ? &traces[i] : nullptr);
    });
    Rational total(0);
    for (std::size_t i = 0; i < decs.size(); ++i) {
        total += partial[i];
        if (lookup.log()) {
            lookup.log()->merge(logs[i]);
        }
        if (trace) {
            trace->insert(trace->end(), traces[i].begin(), traces[i].end());
        }
    }
    return total;
}

Rational reference::stationary_sum(const CurveClass& beta, int g, const Lookup& lookup, const DeltaOptions& opts) {
    if (g <= 0) {
        return 0;
    }
    const int nmax = opts.nmax < 0 ? std::max(cc_degree(lookup.preset(), beta), 0) : opts.nmax;
    Rational total(0);
    for (const auto& dec : decompose_for_delta(lookup.preset(), beta, nmax)) {
        total += decomposition_sum(dec, g, lookup, opts, nullptr);
    }
    return total;
}

GenusSeries delta_series(const CurveClass& gamma, int genus_cap, const Lookup& lookup, const DeltaOptions& opts,
                         std::vector<DeltaTerm>* trace) {
    const int e = tangency_plus_one(lookup, gamma);
    const GenusSeries k1 = opts.k1 ? opts.k1->truncated(genus_cap) : kernel_k1(genus_cap);
    if (k1.cap() < genus_cap) {
        throw OutOfCap("correction kernel known only to u^" + std::to_string(k1.cap()));
    }
    std::vector<Rational> inner(static_cast<std::size_t>(genus_cap + 1));
    for (int g = 1; g <= genus_cap; ++g) {
        Rational value = sign_power(e) * (e - 1) * stationary_sum(gamma, g, lookup, opts, trace);
        for (int i = 0; i < g; ++i) {
            value += lookup.require(InvariantKind::LogTwoPoint, gamma, i) * k1.coefficient(g - i);
        }
        inner[static_cast<std::size_t>(g)] = value;
    }
    GenusSeries bracket = GenusSeries::from_coefficients(std::move(inner));
    GenusSeries vertices = gs_mul(kernel_v2(e, genus_cap), kernel_v3(genus_cap));
    return gs_scale(gs_mul(bracket, vertices), Rational(e - 1));
}

Rational delta_full(const CurveClass& gamma, int g, const Lookup& lookup, const DeltaOptions& opts) {
    if (g < 0) {
        throw std::invalid_argument("delta_full: negative genus");
    }
    return delta_series(gamma, g, lookup, opts).coefficient(g);
}

} // namespace gwseries
