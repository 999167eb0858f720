#include "gwseries/genus_series.hpp"

#include "gwseries/errors.hpp"

#include <algorithm>
#include <sstream>

namespace gwseries {

namespace {

constexpr int kMinPole = -1;

int effective_valuation(const GenusSeries& s) {
    auto v = s.valuation();
    return v ? std::min(*v, 0) : 0;
}

// Multiply by u^k.
GenusSeries shift(const GenusSeries& s, int k) {
    return GenusSeries(s.min_upow() + k, s.cap() + k, s.coeffs());
}

// 2 sin(k hbar/2)/hbar as a series in u.
GenusSeries sine_ratio(int k, int cap) {
    std::vector<Rational> c;
    c.reserve(static_cast<std::size_t>(std::max(cap + 1, 0)));
    Rational kk(k);
    Rational kpow = kk; // k^(2j+1)
    Rational four_pow(1);
    for (int j = 0; j <= cap; ++j) {
        Rational term = kpow / (four_pow * factorial(static_cast<unsigned>(2 * j + 1)));
        c.push_back(j % 2 == 0 ? term : Rational(-term));
        kpow *= kk * kk;
        four_pow *= 4;
    }
    return GenusSeries(0, cap, std::move(c));
}

GenusSeries power(const GenusSeries& base, int n) {
    GenusSeries result = GenusSeries::constant(1, base.cap());
    for (int i = 0; i < n; ++i) {
        result = gs_mul(result, base);
    }
    return result;
}

} // namespace

GenusSeries::GenusSeries(int min_upow, int cap, std::vector<Rational> coeffs)
    : min_upow_(min_upow), cap_(cap), coeffs_(std::move(coeffs)) {
    const long expected = std::max(0L, static_cast<long>(cap) - min_upow + 1);
    if (static_cast<long>(coeffs_.size()) != expected) {
        throw std::invalid_argument("GenusSeries: coefficient count does not match cap");
    }
    // Trim zeros sitting below the allowed pole, then reject what is left.
    std::size_t drop = 0;
    while (min_upow_ + static_cast<int>(drop) < kMinPole && drop < coeffs_.size()) {
        if (coeffs_[drop] != 0) {
            throw PoleTooDeep("coefficient at u^" + std::to_string(min_upow_ + static_cast<int>(drop)));
        }
        ++drop;
    }
    if (drop > 0) {
        coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(drop));
        min_upow_ += static_cast<int>(drop);
    }
    if (min_upow_ < kMinPole) {
        // Nothing known at all below the pole floor: clamp the empty range.
        min_upow_ = kMinPole;
        if (cap_ < kMinPole) {
            cap_ = kMinPole - 1;
        }
        coeffs_.assign(static_cast<std::size_t>(std::max(0, cap_ - min_upow_ + 1)), Rational(0));
    }
}

GenusSeries GenusSeries::zero(int cap) {
    return GenusSeries(0, cap, std::vector<Rational>(static_cast<std::size_t>(std::max(cap + 1, 0))));
}

GenusSeries GenusSeries::constant(const Rational& c, int cap) {
    GenusSeries s = zero(cap);
    if (cap >= 0) {
        s.coeffs_[0] = c;
    }
    return s;
}

GenusSeries GenusSeries::monomial(const Rational& c, int upow, int cap) {
    if (upow > cap) {
        return zero(cap);
    }
    int lo = std::min(upow, 0);
    std::vector<Rational> v(static_cast<std::size_t>(cap - lo + 1));
    v[static_cast<std::size_t>(upow - lo)] = c;
    return GenusSeries(lo, cap, std::move(v));
}

GenusSeries GenusSeries::from_coefficients(std::vector<Rational> coeffs) {
    int cap = static_cast<int>(coeffs.size()) - 1;
    return GenusSeries(0, cap, std::move(coeffs));
}

Rational GenusSeries::coefficient(int g) const {
    if (g > cap_) {
        throw OutOfCap("u^" + std::to_string(g) + " beyond cap " + std::to_string(cap_));
    }
    if (g < min_upow_) {
        return 0;
    }
    return coeffs_[static_cast<std::size_t>(g - min_upow_)];
}

std::optional<int> GenusSeries::valuation() const {
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] != 0) {
            return min_upow_ + static_cast<int>(i);
        }
    }
    return std::nullopt;
}

bool GenusSeries::is_zero() const {
    return !valuation().has_value();
}

GenusSeries GenusSeries::truncated(int cap) const {
    if (cap >= cap_) {
        return *this;
    }
    int lo = std::min(min_upow_, std::max(cap + 1, kMinPole));
    std::vector<Rational> v;
    for (int p = lo; p <= cap; ++p) {
        v.push_back(p < min_upow_ ? Rational(0) : coeffs_[static_cast<std::size_t>(p - min_upow_)]);
    }
    return GenusSeries(lo, cap, std::move(v));
}

GenusSeries& GenusSeries::operator+=(const GenusSeries& other) { return *this = gs_add(*this, other); }
GenusSeries& GenusSeries::operator-=(const GenusSeries& other) { return *this = gs_sub(*this, other); }
GenusSeries& GenusSeries::operator*=(const GenusSeries& other) { return *this = gs_mul(*this, other); }
GenusSeries& GenusSeries::operator*=(const Rational& c) { return *this = gs_scale(*this, c); }

GenusSeries gs_add(const GenusSeries& a, const GenusSeries& b) {
    int cap = std::min(a.cap(), b.cap());
    int lo = std::min(a.min_upow(), b.min_upow());
    std::vector<Rational> v;
    v.reserve(static_cast<std::size_t>(std::max(cap - lo + 1, 0)));
    for (int p = lo; p <= cap; ++p) {
        v.push_back(a.coefficient(p) + b.coefficient(p));
    }
    return GenusSeries(lo, cap, std::move(v));
}

GenusSeries gs_neg(const GenusSeries& a) {
    return gs_scale(a, Rational(-1));
}

GenusSeries gs_sub(const GenusSeries& a, const GenusSeries& b) {
    return gs_add(a, gs_neg(b));
}

GenusSeries gs_scale(const GenusSeries& a, const Rational& c) {
    std::vector<Rational> v(a.coeffs());
    for (auto& x : v) {
        x *= c;
    }
    return GenusSeries(a.min_upow(), a.cap(), std::move(v));
}

GenusSeries gs_mul(const GenusSeries& a, const GenusSeries& b) {
    // A pole in one factor lowers the precision contributed by the other.
    int cap = std::min(a.cap() + effective_valuation(b), b.cap() + effective_valuation(a));
    int lo = a.min_upow() + b.min_upow();
    std::vector<Rational> v(static_cast<std::size_t>(std::max(cap - lo + 1, 0)));
    const auto& ca = a.coeffs();
    const auto& cb = b.coeffs();
    for (std::size_t i = 0; i < ca.size(); ++i) {
        if (ca[i] == 0) {
            continue;
        }
        for (std::size_t j = 0; j < cb.size(); ++j) {
            std::size_t k = i + j;
            if (k >= v.size()) {
                break;
            }
            v[k] += ca[i] * cb[j];
        }
    }
    if (lo > cap) {
        return GenusSeries(std::min(lo, std::max(cap + 1, kMinPole)), cap, {});
    }
    return GenusSeries(lo, cap, std::move(v));
}

GenusSeries gs_invert(const GenusSeries& a) {
    auto v = a.valuation();
    if (!v) {
        throw ZeroLeadingCoefficient("series is zero up to cap " + std::to_string(a.cap()));
    }
    const int val = *v;
    const int unit_cap = a.cap() - val; // precision of a / u^val
    if (-val < kMinPole) {
        throw PoleTooDeep("inverse starts at u^" + std::to_string(-val));
    }
    std::vector<Rational> unit;
    for (int p = val; p <= a.cap(); ++p) {
        unit.push_back(a.coefficient(p));
    }
    const Rational lead_inv = 1 / unit[0];
    std::vector<Rational> inv(unit.size());
    inv[0] = lead_inv;
    for (std::size_t n = 1; n < unit.size(); ++n) {
        Rational acc(0);
        for (std::size_t j = 1; j <= n; ++j) {
            acc += unit[j] * inv[n - j];
        }
        inv[n] = -acc * lead_inv;
    }
    return GenusSeries(-val, unit_cap - val, std::move(inv));
}

GenusSeries gs_rescale_h(const GenusSeries& a, int k) {
    if (k < 1) {
        throw std::invalid_argument("gs_rescale_h: k must be positive");
    }
    const Rational k2(k * k);
    std::vector<Rational> v(a.coeffs());
    for (std::size_t i = 0; i < v.size(); ++i) {
        int p = a.min_upow() + static_cast<int>(i);
        Rational f(1);
        if (p >= 0) {
            for (int t = 0; t < p; ++t) {
                f *= k2;
            }
        } else {
            for (int t = 0; t < -p; ++t) {
                f /= k2;
            }
        }
        v[i] *= f;
    }
    return GenusSeries(a.min_upow(), a.cap(), std::move(v));
}

Rational gs_coefficient(const GenusSeries& a, int g) {
    return a.coefficient(g);
}

bool operator==(const GenusSeries& a, const GenusSeries& b) {
    if (a.cap() != b.cap()) {
        return false;
    }
    int lo = std::min(a.min_upow(), b.min_upow());
    for (int p = lo; p <= a.cap(); ++p) {
        if (a.coefficient(p) != b.coefficient(p)) {
            return false;
        }
    }
    return true;
}

GenusSeries kernel_sin_power(int g, int k, int cap) {
    if (g < 0 || k < 1) {
        throw std::invalid_argument("kernel_sin_power: need g >= 0 and k >= 1");
    }
    if (g == 0) {
        GenusSeries s = sine_ratio(k, cap + 1);
        return shift(gs_invert(gs_mul(s, s)), -1);
    }
    const int lift = g - 1;
    if (lift > cap) {
        return GenusSeries::zero(cap);
    }
    return shift(power(sine_ratio(k, cap - lift), 2 * g - 2), lift);
}

GenusSeries kernel_v3(int cap) {
    return sine_ratio(1, cap);
}

GenusSeries kernel_v2(int e, int cap) {
    if (e < 2) {
        throw InvalidTangency("kernel_v2 needs e >= 2, got " + std::to_string(e));
    }
    Rational prefactor = sign_power(e) / Rational(e - 1);
    return gs_scale(gs_invert(sine_ratio(e - 1, cap)), prefactor);
}

GenusSeries kernel_k1(int cap) {
    return gs_invert(kernel_v3(cap));
}

std::string to_text(const GenusSeries& s) {
    std::ostringstream out;
    for (int p = s.min_upow(); p <= s.cap(); ++p) {
        if (p != s.min_upow()) {
            out << ' ';
        }
        out << p << ':' << to_string(s.coefficient(p));
    }
    return out.str();
}

GenusSeries parse_series(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string token;
    std::vector<std::pair<int, Rational>> terms;
    while (in >> token) {
        auto colon = token.find(':');
        if (colon == std::string::npos || colon == 0) {
            throw SchemaError("series term '" + token + "' is not upow:rat");
        }
        int p = 0;
        try {
            std::size_t used = 0;
            p = std::stoi(token.substr(0, colon), &used);
            if (used != colon) {
                throw std::invalid_argument("trailing");
            }
        } catch (const std::logic_error&) {
            throw SchemaError("series term '" + token + "' has a bad exponent");
        }
        terms.emplace_back(p, parse_rational(std::string_view(token).substr(colon + 1)));
    }
    if (terms.empty()) {
        throw SchemaError("empty series text");
    }
    int lo = terms.front().first;
    int hi = terms.front().first;
    for (const auto& [p, c] : terms) {
        lo = std::min(lo, p);
        hi = std::max(hi, p);
    }
    lo = std::min(lo, 0);
    std::vector<Rational> v(static_cast<std::size_t>(hi - lo + 1));
    std::vector<bool> seen(v.size(), false);
    for (const auto& [p, c] : terms) {
        auto idx = static_cast<std::size_t>(p - lo);
        if (seen[idx]) {
            throw SchemaError("series text repeats u^" + std::to_string(p));
        }
        seen[idx] = true;
        v[idx] = c;
    }
    return GenusSeries(lo, hi, std::move(v));
}

} // namespace gwseries
