#include "support/oracles.hpp"

#include <algorithm>
#include <set>

namespace oracle {

using gwseries::cc_dot;
using gwseries::cc_tangency;

namespace {

Rational fact(int n) {
    Rational f(1);
    for (int i = 2; i <= n; ++i) {
        f *= i;
    }
    return f;
}

Rational pow_int(const Rational& x, int n) {
    Rational r(1);
    for (int i = 0; i < n; ++i) {
        r *= x;
    }
    return r;
}

Rational binom(int n, int k) {
    return fact(n) / (fact(k) * fact(n - k));
}

Rational sgn(long long n) {
    return (n % 2 == 0) ? Rational(1) : Rational(-1);
}

void tuples_rec(const std::vector<CurveClass>& cands, const CurveClass& remaining, int left,
                std::vector<CurveClass>& cur, const std::function<void(const std::vector<CurveClass>&)>& f) {
    if (remaining.is_zero()) {
        f(cur);
        return;
    }
    if (left == 0) {
        return;
    }
    for (const auto& c : cands) {
        CurveClass rest = remaining - c;
        if (!rest.is_effective()) {
            continue;
        }
        cur.push_back(c);
        tuples_rec(cands, rest, left - 1, cur, f);
        cur.pop_back();
    }
}

void compositions(int len, int total, std::vector<int>& cur, const std::function<void(const std::vector<int>&)>& f) {
    if (static_cast<int>(cur.size()) == len) {
        if (total == 0) {
            f(cur);
        }
        return;
    }
    for (int x = 0; x <= total; ++x) {
        cur.push_back(x);
        compositions(len, total - x, cur, f);
        cur.pop_back();
    }
}

void partitions_rec(int n, int max_part, int parts, int max_parts, bool exact, long long& count) {
    if (n == 0) {
        if (!exact || parts == max_parts) {
            ++count;
        }
        return;
    }
    if (parts == max_parts) {
        return;
    }
    for (int p = std::min(n, max_part); p >= 1; --p) {
        partitions_rec(n - p, p, parts + 1, max_parts, exact, count);
    }
}

} // namespace

Poly poly_mul(const Poly& a, const Poly& b, int cap) {
    Poly out(static_cast<std::size_t>(cap + 1));
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size() && i + j <= static_cast<std::size_t>(cap); ++j) {
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

Poly poly_inverse(const Poly& a, int cap) {
    Poly inv(static_cast<std::size_t>(cap + 1));
    inv[0] = 1 / a[0];
    for (int n = 1; n <= cap; ++n) {
        Rational s(0);
        for (int j = 1; j <= n && j < static_cast<int>(a.size()); ++j) {
            s += a[static_cast<std::size_t>(j)] * inv[static_cast<std::size_t>(n - j)];
        }
        inv[static_cast<std::size_t>(n)] = -s / a[0];
    }
    return inv;
}

Poly sin_power_shifted(int g, int k, int cap) {
    const Rational k2(k * k);
    if (g == 0) {
        // (2 - 2cos(k x)) / u, then invert; entry i is u^(i-1)
        Poly w(static_cast<std::size_t>(cap + 2));
        for (int j = 0; j <= cap + 1; ++j) {
            w[static_cast<std::size_t>(j)] = 2 * sgn(j) * pow_int(k2, j + 1) / fact(2 * j + 2);
        }
        return poly_inverse(w, cap + 1);
    }
    Poly w(static_cast<std::size_t>(cap + 2));
    for (int j = 1; j <= cap + 1; ++j) {
        w[static_cast<std::size_t>(j)] = 2 * sgn(j + 1) * pow_int(k2, j) / fact(2 * j);
    }
    Poly p(static_cast<std::size_t>(cap + 2));
    p[0] = 1;
    for (int i = 0; i < g - 1; ++i) {
        p = poly_mul(p, w, cap + 1);
    }
    // shift by one so that index i holds u^(i-1)
    Poly out(static_cast<std::size_t>(cap + 2));
    for (int i = 1; i <= cap + 1; ++i) {
        out[static_cast<std::size_t>(i)] = p[static_cast<std::size_t>(i - 1)];
    }
    return out;
}

Rational bernoulli(int n) {
    std::vector<Rational> b(static_cast<std::size_t>(n + 1));
    b[0] = 1;
    for (int m = 1; m <= n; ++m) {
        Rational s(0);
        for (int k = 0; k < m; ++k) {
            s += binom(m + 1, k) * b[static_cast<std::size_t>(k)];
        }
        b[static_cast<std::size_t>(m)] = -s / (m + 1);
    }
    return b[static_cast<std::size_t>(n)];
}

Rational half_csc_coefficient(int a, int n) {
    // y csc y = sum (-1)^(n+1) 2 (2^(2n-1) - 1) B_2n y^2n / (2n)!, y = a hbar / 2
    Rational two_pow = n == 0 ? Rational(1, 2) : pow_int(Rational(2), 2 * n - 1);
    Rational c = sgn(n + 1) * 2 * (two_pow - 1) * bernoulli(2 * n) / fact(2 * n);
    return c * pow_int(Rational(a, 2), 2 * n) / a;
}

Poly v3_coefficients(int cap) {
    Poly out;
    for (int j = 0; j <= cap; ++j) {
        out.push_back(sgn(j) / (pow_int(Rational(4), j) * fact(2 * j + 1)));
    }
    return out;
}

Poly v2_coefficients(int e, int cap) {
    Poly out;
    for (int n = 0; n <= cap; ++n) {
        out.push_back(sgn(e) / (e - 1) * half_csc_coefficient(e - 1, n));
    }
    return out;
}

long long partitions_brute(int n, int max_parts, bool exact) {
    long long count = 0;
    partitions_rec(n, n, 0, max_parts, exact, count);
    return count;
}

void for_each_ordered_tuple(const SurfacePreset& p, const CurveClass& target, int max_len,
                            const std::function<void(const std::vector<CurveClass>&)>& f) {
    std::vector<CurveClass> cands;
    for (const auto& c : gwseries::enumerate_effective_upto(p, gwseries::cc_degree(p, target))) {
        if (!c.is_zero() && cc_tangency(p, c) > 0) {
            cands.push_back(c);
        }
    }
    std::vector<CurveClass> cur;
    tuples_rec(cands, target, max_len, cur, f);
}

std::size_t decomposition_count_brute(const SurfacePreset& p, const CurveClass& beta, int nmax) {
    std::size_t total = 0;
    for (int d = 0;; ++d) {
        CurveClass rest = beta - d * p.anticanonical;
        if (!rest.is_effective()) {
            break;
        }
        std::set<std::vector<CurveClass>> seen;
        for_each_ordered_tuple(p, rest, nmax, [&](const std::vector<CurveClass>& t) {
            auto s = t;
            std::sort(s.begin(), s.end());
            seen.insert(s);
        });
        total += seen.size();
    }
    return total;
}

Rational delta1_brute(const SurfacePreset& p, const CurveClass& beta, const R0Fn& r0) {
    const int ee = cc_dot(p, p.anticanonical, p.anticanonical);
    Rational total(0);
    for (int n = 1;; ++n) {
        CurveClass rest = beta - n * p.anticanonical;
        if (!rest.is_effective()) {
            break;
        }
        Rational sigma(0);
        for (int k = 1; k <= n; ++k) {
            if (n % k == 0) {
                sigma += Rational(1, k);
            }
        }
        Rational coeff(0);
        for_each_ordered_tuple(p, rest, 1000, [&](const std::vector<CurveClass>& t) {
            Rational term = pow_int(Rational(n), static_cast<int>(t.size())) / fact(static_cast<int>(t.size()));
            for (const auto& c : t) {
                int tan = cc_tangency(p, c);
                term *= sgn(tan) * tan * r0(c);
            }
            coeff += term;
        });
        total += sigma * sgn(static_cast<long long>(ee) * n) * coeff;
    }
    return total;
}

Rational stationary_sum_brute(const SurfacePreset& p, const CurveClass& beta, int g, const RFn& r,
                              const StationaryFn& stationary) {
    if (g < 1) {
        return 0;
    }
    const int ee = cc_dot(p, p.anticanonical, p.anticanonical);
    Rational total(0);
    for (int d = 0;; ++d) {
        CurveClass rest = beta - d * p.anticanonical;
        if (!rest.is_effective()) {
            break;
        }
        for_each_ordered_tuple(p, rest, 1000, [&](const std::vector<CurveClass>& parts) {
            const int n = static_cast<int>(parts.size());
            for (int h = 0; h <= g; ++h) {
                std::vector<int> gs;
                compositions(n, g - h, gs, [&](const std::vector<int>& genera) {
                    for (int sa = 0; sa <= 2 * g - 2; ++sa) {
                        std::vector<int> av;
                        compositions(n, sa, av, [&](const std::vector<int>& a) {
                            long long aut = 1;
                            for (int j = 0; j < n; ++j) {
                                aut *= partitions_brute(a[static_cast<std::size_t>(j)],
                                                        genera[static_cast<std::size_t>(j)], false);
                            }
                            if (aut == 0) {
                                return;
                            }
                            const int m = 2 * g - 2 - sa;
                            Rational nv = stationary(h, a, m, d);
                            if (nv == 0) {
                                return;
                            }
                            Rational term = sgn(g - 1 + static_cast<long long>(ee) * d) * pow_int(Rational(ee), m) /
                                            (fact(m) * Rational(static_cast<long>(aut)) * fact(n)) * nv;
                            for (int j = 0; j < n; ++j) {
                                const auto& c = parts[static_cast<std::size_t>(j)];
                                int tan = cc_tangency(p, c);
                                term *= sgn(tan) * tan * r(c, genera[static_cast<std::size_t>(j)]);
                            }
                            total += term;
                        });
                    }
                });
            }
        });
    }
    return total;
}

Rational elliptic_genus1_points(int n, int d) {
    if (d == 0) {
        return n == 1 ? Rational(-1, 24) : Rational(0);
    }
    Rational sigma(0);
    for (int k = 1; k <= d; ++k) {
        if (d % k == 0) {
            sigma += Rational(1, k);
        }
    }
    return pow_int(Rational(d), n) * sigma;
}

std::vector<Rational> minus_log_euler(int nmax) {
    // f = prod_m (1 - x^m) - 1, then -log(1 + f) = sum_k (-1)^k f^k / k
    Poly prod(static_cast<std::size_t>(nmax + 1));
    prod[0] = 1;
    for (int m = 1; m <= nmax; ++m) {
        Poly factor(static_cast<std::size_t>(nmax + 1));
        factor[0] = 1;
        factor[static_cast<std::size_t>(m)] = -1;
        prod = poly_mul(prod, factor, nmax);
    }
    Poly f = prod;
    f[0] = 0;
    Poly power(static_cast<std::size_t>(nmax + 1));
    power[0] = 1;
    Poly result(static_cast<std::size_t>(nmax + 1));
    for (int k = 1; k <= nmax; ++k) {
        power = poly_mul(power, f, nmax);
        for (int i = 0; i <= nmax; ++i) {
            result[static_cast<std::size_t>(i)] += sgn(k) * power[static_cast<std::size_t>(i)] / k;
        }
    }
    return std::vector<Rational>(result.begin() + 1, result.end());
}

} // namespace oracle
