#include "gwseries/rational.hpp"

#include "gwseries/errors.hpp"

#include <cctype>

namespace gwseries {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            return false;
        }
    }
    return true;
}

} // namespace

Rational parse_rational(std::string_view text) {
    std::string_view num = text;
    std::string_view den;
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        num = text.substr(0, slash);
        den = text.substr(slash + 1);
        if (!all_digits(den)) {
            throw RationalParseError("bad denominator in '" + std::string(text) + "'");
        }
    }
    std::string_view digits = num;
    if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) {
        digits.remove_prefix(1);
    }
    if (!all_digits(digits)) {
        throw RationalParseError("bad numerator in '" + std::string(text) + "'");
    }
    mpz_class p(std::string(num.front() == '+' ? num.substr(1) : num), 10);
    mpz_class q(1);
    if (!den.empty()) {
        q = mpz_class(std::string(den), 10);
        if (q == 0) {
            throw RationalParseError("zero denominator in '" + std::string(text) + "'");
        }
    }
    Rational r(p, q);
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& q) {
    return q.get_str(10);
}

Rational factorial(unsigned n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Rational(f);
}

} // namespace gwseries
