#include <doctest.h>

#include "sobtrace/exact.hpp"

using namespace sobtrace;

namespace {

RationalPoly K() { return RationalPoly::var(Var::k); }
RationalPoly N() { return RationalPoly::var(Var::n); }

}  // namespace

TEST_CASE("rationals stay in lowest terms") {
    Rat a(6, -4);
    CHECK(a.num() == -3);
    CHECK(a.den() == 2);
    CHECK(a.str() == "-3/2");
    CHECK(Rat::parse("10/4") == Rat(5, 2));
    CHECK(Rat::parse("-7") == Rat(-7));
    CHECK_THROWS(Rat::parse("1/0"));
    CHECK_THROWS(Rat::parse("abc"));
    CHECK_THROWS(Rat(1) / Rat(0));
    CHECK((Rat(1, 3) + Rat(1, 6)) == Rat(1, 2));
    CHECK(pow(Rat(2, 3), -2) == Rat(9, 4));
}

TEST_CASE("pochhammer symbol") {
    CHECK(pochhammer(Rat(17, 5), 0) == Rat(1));
    CHECK(pochhammer(Rat(5, 2), 3) == Rat(315, 8));
    CHECK(pochhammer(Rat(1), 5) == factorial(5));
    CHECK(factorial(5) == Rat(120));
}

TEST_CASE("gamma at half-integers") {
    CHECK(gamma_half(Rat(1, 2)) == HalfGamma{Rat(1), 1});
    CHECK(gamma_half(Rat(7, 2)) == HalfGamma{Rat(15, 8), 1});
    CHECK(gamma_half(Rat(4)) == HalfGamma{Rat(6), 0});
    CHECK(gamma_half(Rat(7, 2)).to_double() == doctest::Approx(3.3233509704478426).epsilon(1e-15));
    CHECK_THROWS(gamma_half(Rat(1, 3)));
    CHECK_THROWS(gamma_half(Rat(0)));
}

TEST_CASE("gamma ratio polynomials") {
    RationalPoly g1 = gamma_ratio_poly(1);
    CHECK(g1 == K() + (N() - RationalPoly(1)) * Rat(1, 2));
    CHECK(g1.subst(Var::k, RationalPoly(0)) == (N() - RationalPoly(1)) * Rat(1, 2));

    RationalPoly g4_at0 = gamma_ratio_poly(4).subst(Var::k, RationalPoly(0));
    RationalPoly a = N() * (N() - RationalPoly(2)) * Rat(1, 4);
    RationalPoly b = (N() + RationalPoly(2)) * (N() - RationalPoly(4)) * Rat(1, 4);
    CHECK(g4_at0 == a * b);

    CHECK(gamma_ratio_poly(3).eval(Rat(2), Rat(5)) == Rat(60));
}

TEST_CASE("polynomial equality is structural") {
    RationalPoly p = K() * K() - Rat(3, 2) * N();
    CHECK(poly_equal(p, p));
    CHECK(poly_equal(K() + N(), N() + K()));
    CHECK_FALSE(poly_equal(K(), K() + RationalPoly(0) * N() + RationalPoly(1)));
    CHECK((p - p).is_zero());
}

TEST_CASE("polynomial evaluation and degrees") {
    RationalPoly p = pow(K() + N(), 3) - Rat(2) * RationalPoly::var(Var::lambda);
    CHECK(p.degree() == 3);
    CHECK(p.degree_in(Var::lambda) == 1);
    CHECK(p.eval(Rat(1), Rat(2), Rat(1, 2)) == Rat(26));
    CHECK(p.eval_double(1.0, 2.0, 0.5) == doctest::Approx(26.0));
    CHECK(p.coeff_in(Var::lambda, 1) == RationalPoly(-2));
}

TEST_CASE("division by a polynomial with constant leading coefficient") {
    RationalPoly d = Rat(2) * K() + N() - RationalPoly(5);
    RationalPoly q = K() * N() + RationalPoly(3);
    RationalPoly r = N() * N();
    PolyDivision div = divide_in(q * d + r, d, Var::k);
    CHECK(div.quotient == q);
    CHECK(div.remainder == r);
}

TEST_CASE("expansion in powers of the Casimir") {
    RationalPoly C = casimir_poly();
    CHECK(C == K() * (N() - RationalPoly(1) + K()));
    std::vector<RationalPoly> want{N(), RationalPoly(Rat(1, 3)), N() * N()};
    RationalPoly p = want[0] + want[1] * C + want[2] * C * C;
    std::vector<RationalPoly> got = expand_in_powers(p, C, Var::k);
    REQUIRE(got.size() >= 3);
    for (std::size_t j = 0; j < 3; ++j) CHECK(got[j] == want[j]);
    CHECK_THROWS(expand_in_powers(K(), C, Var::k));
}

TEST_CASE("integrals of polynomial times exponential") {
    CHECK(exppoly_integral(UPoly<Rat>{{Rat(1)}}, Rat(2)) == Rat(1, 2));
    CHECK(exppoly_integral(UPoly<Rat>{{Rat(0), Rat(0), Rat(1)}}, Rat(2)) == Rat(1, 4));
    CHECK(exppoly_integral(UPoly<Rat>{{Rat(0), Rat(1)}}, Rat(2)) == Rat(1, 4));
    UPoly<RationalPoly> sym{{RationalPoly::var(Var::lambda), RationalPoly(1)}};
    CHECK(exppoly_integral(sym, Rat(1)) == RationalPoly::var(Var::lambda) + RationalPoly(1));
}
