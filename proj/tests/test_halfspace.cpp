#include <doctest.h>

#include "sobtrace/halfspace.hpp"

using namespace sobtrace;

namespace {

RationalPoly L() { return RationalPoly::var(Var::lambda); }

}  // namespace

TEST_CASE("bounded profiles") {
    ExpPolyProfile p2 = profile(2);
    CHECK(p2.p.c == std::vector<Rat>{Rat(1), Rat(1)});

    ExpPolyProfile p3 = profile(3, Rat(1, 3));
    CHECK(p3.p.c == std::vector<Rat>{Rat(1), Rat(1), Rat(1, 3)});

    // phi = p e^{-y}: phi''' (0) = -p0 + 3 p1 - 3 p2 + p3' with p3' = 6 p3 for the cubic.
    for (Rat lambda : {Rat(0), Rat(1, 5), Rat(-2, 7)}) {
        ExpPolyProfile p4 = profile(4, lambda);
        REQUIRE(p4.p.degree() == 3);
        CHECK(p4.p.at(0) == Rat(1));
        CHECK(p4.p.at(1) == Rat(1));
        CHECK(p4.p.at(2) == (Rat(1) - lambda) / Rat(2));
        CHECK(Rat(-1) + 3 * p4.p.at(1) - 6 * p4.p.at(2) + 6 * p4.p.at(3) == Rat(0));
    }
    for (int m = 2; m <= 4; ++m)
        for (const RationalPoly& c : profile_ode_residual(m).c) CHECK(c.is_zero());
    CHECK_THROWS(profile(1));
    CHECK_THROWS(profile(5));
}

TEST_CASE("profile energies") {
    CHECK(profile_energy(2) == Rat(2));
    CHECK(profile_energy(3, Rat(1, 3)) == Rat(8, 3));
    CHECK(profile_energy(4, Rat(1, 5)) == Rat(16, 5));
    CHECK(poly_equal(profile_energy_poly(3), Rat(3) * L() * L() - Rat(2) * L() + 3));
    CHECK(poly_equal(profile_energy_poly(4), Rat(20) * L() * L() - Rat(8) * L() + 4));

    CHECK(optimal_lambda(3) == std::pair<Rat, Rat>{Rat(1, 3), Rat(8, 3)});
    CHECK(optimal_lambda(4) == std::pair<Rat, Rat>{Rat(1, 5), Rat(16, 5)});
    for (int m = 3; m <= 4; ++m) CHECK(profile_energy(m, optimal_lambda(m).first) == optimal_lambda(m).second);
    CHECK_THROWS(optimal_lambda(2));
}

TEST_CASE("half-space prefactors") {
    CHECK(halfspace_prefactor(1) == Rat(1));
    CHECK(halfspace_prefactor(2) == Rat(2));
    CHECK(halfspace_prefactor(3) == Rat(8, 3));
    CHECK(halfspace_prefactor(4) == Rat(16, 5));
    // c_m = sqrt(pi) Gamma(m) Gamma((n-1)/2 + m) / (Gamma((n+1)/2 - m) Gamma(m - 1/2)).
    for (int m = 1; m <= 4; ++m)
        for (int n = 2 * m; n <= 2 * m + 10; ++n) {
            HalfGamma c = gamma_half(Rat(1, 2)) * gamma_half(Rat(m)) * gamma_half(Rat(n - 1, 2) + Rat(m)) /
                          (gamma_half(Rat(n + 1, 2) - Rat(m)) * gamma_half(Rat(2 * m - 1, 2)));
            CHECK(c.sqrt_pi_exponent == 0);
            CHECK(c.rational_part == halfspace_prefactor(m) * gamma_ratio_poly(2 * m - 1).eval(Rat(0), Rat(n)));
        }
}
