#pragma once

#include "gwseries/rational.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gwseries {

// Truncated Laurent series in u = hbar^2. Coefficients are known exactly for
// u-powers min_upow..cap; everything above cap is unknown. The deepest
// allowed pole is u^-1.
class GenusSeries {
public:
    GenusSeries() = default;
    // coeffs[i] is the coefficient of u^(min_upow + i); size must equal
    // cap - min_upow + 1 (or be empty when cap < min_upow).
    GenusSeries(int min_upow, int cap, std::vector<Rational> coeffs);

    static GenusSeries zero(int cap);
    static GenusSeries constant(const Rational& c, int cap);
    static GenusSeries monomial(const Rational& c, int upow, int cap);
    // Builds from coefficients of u^0..u^cap.
    static GenusSeries from_coefficients(std::vector<Rational> coeffs);

    int min_upow() const { return min_upow_; }
    int cap() const { return cap_; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    // Coefficient of u^g; zero below min_upow, OutOfCap above cap.
    Rational coefficient(int g) const;
    // Smallest u-power with a nonzero coefficient.
    std::optional<int> valuation() const;
    bool is_zero() const;

    GenusSeries truncated(int cap) const;

    GenusSeries& operator+=(const GenusSeries& other);
    GenusSeries& operator-=(const GenusSeries& other);
    GenusSeries& operator*=(const GenusSeries& other);
    GenusSeries& operator*=(const Rational& c);

private:
    int min_upow_ = 0;
    int cap_ = 0;
    std::vector<Rational> coeffs_{Rational(0)};
};

GenusSeries gs_add(const GenusSeries& a, const GenusSeries& b);
GenusSeries gs_sub(const GenusSeries& a, const GenusSeries& b);
GenusSeries gs_neg(const GenusSeries& a);
GenusSeries gs_scale(const GenusSeries& a, const Rational& c);
GenusSeries gs_mul(const GenusSeries& a, const GenusSeries& b);
GenusSeries gs_invert(const GenusSeries& a);
GenusSeries gs_rescale_h(const GenusSeries& a, int k);
Rational gs_coefficient(const GenusSeries& a, int g);

inline GenusSeries operator+(const GenusSeries& a, const GenusSeries& b) { return gs_add(a, b); }
inline GenusSeries operator-(const GenusSeries& a, const GenusSeries& b) { return gs_sub(a, b); }
inline GenusSeries operator-(const GenusSeries& a) { return gs_neg(a); }
inline GenusSeries operator*(const GenusSeries& a, const GenusSeries& b) { return gs_mul(a, b); }
inline GenusSeries operator*(const Rational& c, const GenusSeries& a) { return gs_scale(a, c); }
inline GenusSeries operator*(const GenusSeries& a, const Rational& c) { return gs_scale(a, c); }

// Equal caps and equal coefficients (absent terms read as zero).
bool operator==(const GenusSeries& a, const GenusSeries& b);

// (2 sin(k hbar / 2))^(2g-2)
GenusSeries kernel_sin_power(int g, int k, int cap);
// 2 sin(hbar/2) / hbar
GenusSeries kernel_v3(int cap);
// ((-1)^e/(e-1)) (hbar/2) csc((e-1) hbar/2)
GenusSeries kernel_v2(int e, int cap);
// hbar / (2 sin(hbar/2))
GenusSeries kernel_k1(int cap);

// "upow:rat" pairs separated by spaces, min_upow through cap.
std::string to_text(const GenusSeries& s);
GenusSeries parse_series(std::string_view text);

} // namespace gwseries
