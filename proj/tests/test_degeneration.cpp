#include "gwseries/degeneration.hpp"
#include "gwseries/errors.hpp"
#include "gwseries/transforms.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

using namespace gwseries;

namespace {

Rational sgn(int n) {
    return n % 2 == 0 ? 1 : -1;
}

} // namespace

TEST_CASE("genus-0 collapse") {
    gen::Rng rng(1);
    for (int e = 2; e <= 12; ++e) {
        for (int trial = 0; trial < 5; ++trial) {
            const Rational n0 = rng.rational();
            auto r = GenusSeries::constant(two_point_from_local_g0(e, n0), 0);
            CHECK(assemble_Nz(e, r).coefficient(0) == n0);
        }
    }
}

TEST_CASE("genus-1 coefficient has three summands") {
    gen::Rng rng(2);
    for (int e = 2; e <= 9; ++e) {
        const Rational r0 = rng.rational();
        const Rational r1 = rng.rational();
        auto nz = assemble_Nz(e, GenusSeries::from_coefficients({r0, r1}));
        const Rational em1(e - 1);
        const Rational expect =
            em1 * (sgn(e) / (em1 * em1) * r1 + sgn(e) / 24 * r0 + sgn(e + 1) / (24 * em1 * em1) * r0);
        CHECK(nz.coefficient(1) == expect);
    }
    CHECK(assemble_Nz(4, GenusSeries::zero(3)).is_zero());
    CHECK_THROWS_AS(assemble_Nz(1, GenusSeries::zero(1)), InvalidTangency);
}

TEST_CASE("triple convolution against the nested product") {
    gen::Rng rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        const int e = rng.integer(2, 10);
        const int cap = rng.integer(0, 6);
        DegenerationInput inp{e, gen::random_series(rng, 0, cap), cap};
        auto nested = assemble_Nz(inp);
        CHECK(nested == reference::assemble_Nz(inp));

        // and against the oracle kernels, independent of the library's series code
        auto rp = oracle::Poly(inp.r_two_point.coeffs().begin(), inp.r_two_point.coeffs().end());
        auto prod = oracle::poly_mul(oracle::poly_mul(rp, oracle::v2_coefficients(e, cap), cap),
                                     oracle::v3_coefficients(cap), cap);
        for (int g = 0; g <= cap; ++g) {
            CHECK(nested.coefficient(g) == (e - 1) * prod[static_cast<std::size_t>(g)]);
        }
    }
}

TEST_CASE("assembly is linear") {
    gen::Rng rng(4);
    for (int trial = 0; trial < 20; ++trial) {
        const int e = rng.integer(2, 8);
        const int cap = rng.integer(0, 4);
        auto a = gen::random_series(rng, 0, cap);
        auto b = gen::random_series(rng, 0, cap);
        const Rational c = rng.rational();
        CHECK(assemble_Nz(e, a + c * b) == assemble_Nz(e, a) + c * assemble_Nz(e, b));
    }
}

TEST_CASE("direct genus-1 evaluation of the V3 vertex") {
    CHECK(genus1_v3_direct_check() == Rational(-1, 24));
    CHECK(genus1_v3_direct_check() == kernel_v3(1).coefficient(1));
    CHECK(genus1_v3_direct_check(2) == Rational(-1, 12));
}
