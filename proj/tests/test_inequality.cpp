#include <doctest.h>

#include <cmath>
#include <random>

#include "sobtrace/extension.hpp"
#include "sobtrace/inequality.hpp"

using namespace sobtrace;

namespace {

RationalPoly K() { return RationalPoly::var(Var::k); }
RationalPoly N() { return RationalPoly::var(Var::n); }

ZonalFunction random_band_limited(int n, int kmax, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> a(kmax + 1);
    a[0] = 1.0 + std::abs(u(rng));
    for (int k = 1; k <= kmax; ++k) a[k] = u(rng) / (1.0 + k * k);
    return ZonalFunction(n, a);
}

}  // namespace

TEST_CASE("sharp constants and multipliers") {
    CHECK(sharp_constant(3, 1.0) == doctest::Approx(std::cbrt(2 * M_PI * M_PI)).epsilon(1e-14));
    CHECK(sharp_constant(3, 2.0) == doctest::Approx(0.75 * std::pow(2 * M_PI * M_PI, 2.0 / 3)).epsilon(1e-14));
    CHECK_THROWS(sharp_constant(3, 3.0));
    CHECK(sphere_multiplier(0, 3, 1.0) == doctest::Approx(0.75));
    CHECK(sphere_multiplier(2, 5, 1.5) == doctest::Approx(60.0));
    for (int m = 1; m <= 4; ++m) CHECK(trace_prefactor(m) == std::vector<Rat>{1, 2, Rat(8, 3), Rat(16, 5)}[m - 1]);
}

TEST_CASE("coefficient identities") {
    IdentityResult i2 = coefficient_identity(2);
    CHECK(i2.ok);
    CHECK(i2.residual.is_zero());
    CHECK(poly_equal(i2.derived[0], Rat(1, 2) * (N() + 1) * (N() - 3)));
    CHECK(poly_equal(i2.derived[1], RationalPoly(2)));

    IdentityResult i3 = coefficient_identity(3);
    CHECK(i3.ok);
    CHECK(i3.residual.is_zero());
    RationalPoly kk = casimir_poly();
    RationalPoly product =
        Rat(1, 18) * (Rat(4) * (N() + 3) * kk + (N() - 3) * (N() * N() + Rat(4) * N() - 9)) * (Rat(4) * kk + (N() + 3) * (N() - 5));
    RationalPoly lhs = trace_prefactor(3) * gamma_ratio_poly(5) - interior_energy_coefficient(3);
    CHECK(poly_equal(lhs, product));
    CHECK(lhs.eval(1, 7) == Rat(1472));
    CHECK((trace_prefactor(3) * gamma_ratio_poly(5)).eval(1, 7) == Rat(1920));
    CHECK(interior_energy_coefficient(3).eval(1, 7) == Rat(448));

    CHECK(coefficient_identity(1).ok);
    CHECK(p4_factorization_residual().is_zero());
}

TEST_CASE("derived boundary coefficients reproduce the multiplier at k = 0") {
    for (int m = 1; m <= 4; ++m) {
        const std::vector<RationalPoly>& c = derived_coefficients(m);
        RationalPoly sum;
        for (std::size_t j = 0; j < c.size(); ++j) sum += c[j] * pow(casimir_poly(), static_cast<unsigned>(j));
        CHECK(poly_equal(sum, boundary_multiplier(m)));
        CHECK(poly_equal(c[0], boundary_multiplier(m).subst(Var::k, RationalPoly(0))));
    }
    // Order 8 leading terms as derived exactly.
    const std::vector<RationalPoly>& d = derived_coefficients(4);
    CHECK(poly_equal(d[3], RationalPoly(Rat(288, 25))));
    CHECK(poly_equal(d[2], Rat(216, 25) * N() * N() - Rat(432, 25) * N() - 168));
}

TEST_CASE("trace inequality at constants and extremals") {
    InequalityReport r1 = trace_report(1, 3, zonal_mode(3, 0, 1.0), true);
    CHECK(r1.lhs == doctest::Approx(2 * M_PI * M_PI).epsilon(1e-13));
    CHECK(r1.rhs == doctest::Approx(2 * M_PI * M_PI).epsilon(1e-13));
    CHECK(r1.pass);

    InequalityReport r2 = trace_report(2, 5, zonal_mode(5, 0, 1.0), true);
    CHECK(r2.lhs == doctest::Approx(12 * sphere_surface(5)).epsilon(1e-13));
    CHECK(r2.rhs == doctest::Approx(12 * sphere_surface(5)).epsilon(1e-13));

    InequalityReport r3 = trace_report(3, 7, extremal_power(7, 1.0, 0.3, 40), true, {}, 4 * 40 + 32);
    CHECK(std::abs(r3.rel_slack) < 1e-6);
    CHECK(r3.pass);

    for (int m = 1; m <= 4; ++m)
        for (double tau : {0.0, 0.4}) {
            const int n = 2 * m + 2;
            InequalityReport r = trace_report(m, n, extremal_power(n, 0.5 * (n - 2 * m + 1), tau, 40), true);
            CHECK(std::abs(r.rel_slack) < 1e-6);
        }
    CHECK_THROWS(trace_report(2, 3, zonal_mode(3, 0, 1.0), true));
}

TEST_CASE("Beckner-type inequalities") {
    std::mt19937_64 rng(23);
    for (int m = 1; m <= 3; ++m) {
        ZonalFunction f = random_band_limited(2 * m + 1, 12, rng);
        InequalityReport b = beckner_report(m, 2 * m + 1, 1.0, f, false);
        InequalityReport t = trace_report(m, 2 * m + 1, f, false);
        CHECK(std::abs(b.lhs - t.lhs) <= 1e-12 * std::abs(t.lhs));
        CHECK(std::abs(b.rhs - t.rhs) <= 1e-12 * std::abs(t.rhs));
        CHECK(b.pass);
    }
    InequalityReport e = beckner_report(1, 2, 0.5, extremal_power(2, 0.75, 0.25), true);
    CHECK(std::abs(e.rel_slack) < 1e-5);
    InequalityReport y = beckner_report(1, 3, 0.5, zonal_mode(3, 0, 1.0) + zonal_mode(3, 1, 0.01), false);
    CHECK(y.slack > 0);
    CHECK_THROWS(beckner_report(2, 3, 1.0, zonal_mode(3, 0, 1.0), false));
}

TEST_CASE("weighted Beckner inequality") {
    ZonalFunction f = extremal_power(3, 1.25, 0.2);
    InequalityReport w = weighted_beckner_report(3, 0.5, f, true);
    CHECK(std::abs(w.rel_slack) < 1e-4);
    CHECK(w.pass);
    double spectral = weighted_energy_spectral(0.5, f);
    CHECK(std::abs(weighted_energy_quadrature(0.5, f) - spectral) < 1e-5 * spectral);

    ZonalFunction g = extremal_power(4, 1.5, 0.3);
    InequalityReport at_one = weighted_beckner_report(4, 1.0, g, false);
    InequalityReport plain = beckner_report(1, 4, 1.0, g, false);
    CHECK(at_one.lhs == doctest::Approx(plain.lhs).epsilon(1e-12));
    CHECK(at_one.rhs == doctest::Approx(plain.rhs).epsilon(1e-8));

    InequalityReport constant = weighted_beckner_report(3, 0.5, zonal_mode(3, 0, 2.0), true);
    CHECK(std::abs(constant.rel_slack) < 1e-12);
    CHECK_THROWS(weighted_beckner_report(3, 2.0, f, true));
}

TEST_CASE("sphere Sobolev inequality") {
    InequalityReport c = sphere_sobolev_report(3, 1.0, zonal_mode(3, 0, 1.0), true);
    CHECK(c.lhs == doctest::Approx(0.75 * 2 * M_PI * M_PI).epsilon(1e-13));
    CHECK(c.rhs == doctest::Approx(0.75 * 2 * M_PI * M_PI).epsilon(1e-13));
    ZonalFunction f = extremal_power(5, 1.5, 0.3);
    CHECK(std::abs(sphere_sobolev_report(5, 1.0, f, true).rel_slack) < 1e-6);
    InequalityReport p = sphere_sobolev_report(5, 1.0, f + zonal_mode(5, 2, 0.05, f.kmax()), false);
    CHECK(p.slack > 0);
    CHECK_THROWS(sphere_sobolev_report(4, 2.0, f, true));
}

TEST_CASE("Lebedev-Milin inequalities") {
    CHECK(lm_constant(1) == doctest::Approx(1 / (4 * M_PI)).epsilon(1e-14));
    CHECK(lm_constant(2) == doctest::Approx(3 / (16 * M_PI * M_PI)).epsilon(1e-14));
    CHECK(lm_constant(3) == doctest::Approx(5 / (128 * std::pow(M_PI, 3))).epsilon(1e-14));
    for (int m = 1; m <= 4; ++m) {
        InequalityReport zero = lm_report(m, zonal_mode(2 * m - 1, 0, 0.0), true);
        CHECK(zero.lhs == 0.0);
        CHECK(zero.rhs == 0.0);
        CHECK(zero.pass);
        InequalityReport r = lm_report(m, extremal_log(2 * m - 1, 0.3), true);
        CHECK(std::abs(r.rel_slack) < (m < 4 ? 1e-6 : 1e-5));
    }
    CHECK(std::abs(lm_report(4, extremal_log(7, 0.2), true).rel_slack) < 1e-5);
}

TEST_CASE("perturbations of extremals") {
    ZonalFunction f0 = extremal_power(5, 1.0, 0.3, 40);
    auto trace = [](const ZonalFunction& f) { return trace_report(2, 5, f, false); };
    ScanResult s = extremality_scan(trace, f0, 2, {-0.1, -0.05, 0.0, 0.05, 0.1});
    CHECK(s.zero_at_origin);
    CHECK(s.positive);
    CHECK(s.monotone);
    REQUIRE(s.curve.size() == 5);
    CHECK(std::abs(s.curve[2].slack) < 1e-6 * 12 * sphere_surface(5));
    double plus = s.curve[3].slack;
    double minus = s.curve[1].slack;
    CHECK(std::abs(plus - minus) < 0.1 * plus);
}
