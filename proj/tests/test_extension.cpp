#include <doctest.h>

#include <cmath>
#include <random>

#include "sobtrace/extension.hpp"

using namespace sobtrace;

namespace {

RationalPoly K() { return RationalPoly::var(Var::k); }
RationalPoly N() { return RationalPoly::var(Var::n); }

ZonalFunction random_band_limited(int n, int kmax, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> a(kmax + 1);
    for (int k = 0; k <= kmax; ++k) a[k] = u(rng) / (1.0 + k * k);
    return ZonalFunction(n, a);
}

}  // namespace

TEST_CASE("boundary conditions") {
    BoundaryConditionSet b2 = boundary_conditions(2, 3);
    REQUIRE(b2.forms.size() == 2);
    CHECK(b2.forms[0].u == Rat(1));
    CHECK(b2.forms[1].u == Rat(0));
    CHECK(b2.forms[1].v == Rat(0));

    BoundaryConditionSet b3 = boundary_conditions(3, 5);
    CHECK(b3.forms[1].at(Rat(12)) == Rat(0));
    CHECK(b3.forms[2].u == Rat(0));
    CHECK(b3.forms[2].v == Rat(-1, 3));

    BoundaryConditionSet b4 = boundary_conditions(4, 7);
    CHECK(b4.forms[1].u == Rat(0));
    CHECK(b4.forms[3].u == Rat(0));
    CHECK(b4.forms[3].v == Rat(3, 5));

    CHECK_THROWS(boundary_conditions(5, 12));
}

TEST_CASE("radial coefficients") {
    for (int k = 0; k < 5; ++k) CHECK(radial_coefficients(1, 4, k) == std::vector<Rat>{Rat(1)});
    CHECK(radial_coefficients(3, 7, 0) == std::vector<Rat>{Rat(5, 3), Rat(-5, 6), Rat(1, 6)});
    for (int n : {4, 5, 9})
        for (int k : {0, 1, 6}) {
            std::vector<Rat> c = radial_coefficients(2, n, k);
            CHECK(c[0] == Rat(n + 1 + 2 * k, 4));
            CHECK(c[1] == Rat(-(n - 3 + 2 * k), 4));
        }
    for (int m = 2; m <= 3; ++m) {
        std::vector<RationalPoly> polys = radial_coefficient_polys(m);
        std::vector<RationalPoly> closed = radial_coefficients_closed_form(m);
        REQUIRE(polys.size() == closed.size());
        for (std::size_t j = 0; j < polys.size(); ++j) CHECK(poly_equal(polys[j], closed[j]));
    }
    // The polynomial route and the fixed-(n,k) linear solve agree, order 8 included.
    std::vector<RationalPoly> p4 = radial_coefficient_polys(4);
    std::vector<Rat> c4 = radial_coefficients(4, 9, 3);
    for (int j = 0; j < 4; ++j) CHECK(p4[j].eval(Rat(3), Rat(9)) == c4[j]);
}

TEST_CASE("interior energy coefficients") {
    CHECK(poly_equal(interior_energy_coefficient(1), K()));
    RationalPoly s4 = Rat(1, 4) * (N() + 1 + Rat(2) * K()) * pow(N() - 3 + Rat(2) * K(), 2);
    CHECK(poly_equal(interior_energy_coefficient(2), s4));
    RationalPoly s6 = Rat(1, 36) * pow(N() - 5 + Rat(2) * K(), 2) *
                      (Rat(12) * K() * K() + Rat(8) * K() * N() + N() * N() - Rat(6) * N() + 9) * (N() + 3 + Rat(2) * K());
    CHECK(poly_equal(interior_energy_coefficient(3), s6));
    for (int m = 1; m <= 3; ++m) CHECK(poly_equal(interior_energy_coefficient(m), interior_energy_closed_form(m)));

    RationalPoly q = Rat(2) * K() + N();
    RationalPoly s8 = Rat(1, 200) * pow(q - 7, 2) * pow(q - 5, 2) * (q + 3) * (q + 5) * (Rat(10) * K() + Rat(5) * N() + 9);
    CHECK(poly_equal(interior_energy_coefficient(4), s8));

    for (int m = 1; m <= 4; ++m)
        for (int n : {2 * m, 2 * m + 3})
            for (int k : {0, 2, 7}) CHECK(interior_energy_value(m, n, k) == interior_energy_coefficient(m).eval(k, n));
}

TEST_CASE("exact boundary data and polyharmonicity") {
    ZonalFunction f = extremal_power(6, 1.0, 0.3, 12);
    for (int m = 1; m <= 4; ++m) CHECK(verify_boundary(make_extension(m, f)));

    PolyharmonicExtension e2 = make_extension(2, f);
    for (int k = 0; k <= 12; ++k) CHECK(k * e2.coeffs[k][0] + (k + 2) * e2.coeffs[k][1] == Rat(-3, 2));

    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> mdist(1, 4), ndist(0, 6), kdist(0, 15);
    for (int i = 0; i < 50; ++i) {
        int m = mdist(rng);
        int n = 2 * m - 1 + ndist(rng);
        CHECK(verify_polyharmonic(m, n, kdist(rng)));
    }
}

TEST_CASE("interior energy by quadrature") {
    PolyharmonicExtension c = make_extension(2, zonal_mode(5, 0, 1.0));
    CHECK(interior_energy_quadrature(c) == doctest::Approx(6 * sphere_surface(5)).epsilon(1e-13));

    ZonalFunction single = zonal_mode(4, 3, 0.8);
    PolyharmonicExtension h = make_extension(1, single);
    CHECK(interior_energy_quadrature(h) == doctest::Approx(3 * single.mode_norms()[3]).epsilon(1e-12));

    std::mt19937_64 rng(11);
    for (int m = 1; m <= 4; ++m)
        for (int n : {2 * m, 2 * m + 2, 2 * m + 4}) {
            PolyharmonicExtension ext = make_extension(m, random_band_limited(n, 20, rng));
            std::vector<std::string> warnings;
            double quad = interior_energy_quadrature(ext, 0, &warnings);
            double spectral = interior_energy_spectral(ext);
            CHECK(std::abs(quad - spectral) <= 1e-10 * std::abs(spectral));
            CHECK(warnings.empty());
        }
}
