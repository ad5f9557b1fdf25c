#include <doctest.h>

#include <cmath>

#include "sobtrace/sphere.hpp"

using namespace sobtrace;

TEST_CASE("Gauss-Jacobi rule") {
    // Reference nodes and weights from scipy.special.roots_jacobi(5, 0.5, -0.25).
    const double nodes[] = {-0.9370935560150578, -0.613320134921045, -0.1029092573805276, 0.43919736335214155,
                            0.8482719264279035};
    const double weights[] = {0.5318407152107505, 0.7079508994617024, 0.5985115504646914, 0.34270825726085,
                              0.09872760467175963};
    QuadRule q = gauss_jacobi(5, 0.5, -0.25);
    REQUIRE(q.nodes.size() == 5);
    for (int i = 0; i < 5; ++i) {
        CHECK(q.nodes[i] == doctest::Approx(nodes[i]).epsilon(1e-13));
        CHECK(q.weights[i] == doctest::Approx(weights[i]).epsilon(1e-13));
    }
    QuadRule gl = gauss_legendre(8);
    CHECK(gl.integrate([](double t) { return std::pow(t, 14); }) == doctest::Approx(2.0 / 15).epsilon(1e-14));
    CHECK_THROWS(gauss_jacobi(0, 0, 0));
    CHECK_THROWS(gauss_jacobi(4, -1.0, 0));
}

TEST_CASE("Gegenbauer polynomials") {
    CHECK(gegenbauer(0, 5, 0.3) == 1.0);
    CHECK(gegenbauer(1, 3, 0.37) == doctest::Approx(0.74));
    CHECK(gegenbauer(2, 3, 1.0) == doctest::Approx(3.0));
    // scipy.special.eval_gegenbauer(6, 1.5, 0.37) and eval_chebyt(5, 0.3).
    CHECK(gegenbauer(6, 4, 0.37) == doctest::Approx(2.3209811097641877).epsilon(1e-13));
    CHECK(gegenbauer(4, 2, -0.6) == doctest::Approx(-0.408).epsilon(1e-13));
    CHECK(gegenbauer(5, 1, 0.3) == doctest::Approx(0.99888).epsilon(1e-13));
    CHECK(gegenbauer_norm_sq(6, 4) == doctest::Approx(7.466666666666667).epsilon(1e-13));
}

TEST_CASE("sphere surface areas") {
    CHECK(sphere_surface(0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(sphere_surface(3) == doctest::Approx(2 * M_PI * M_PI).epsilon(1e-15));
    CHECK(sphere_surface(5) == doctest::Approx(std::pow(M_PI, 3)).epsilon(1e-15));
    CHECK(sphere_surface(7) == doctest::Approx(std::pow(M_PI, 4) / 3).epsilon(1e-15));
}

TEST_CASE("zonal quadrature") {
    for (int n : {1, 2, 3, 6}) {
        QuadRule q = zonal_quadrature(n, 20);
        CHECK(sphere_surface(n - 1) * q.integrate([](double) { return 1.0; }) ==
              doctest::Approx(sphere_surface(n)).epsilon(1e-12));
        CHECK(std::abs(q.integrate([](double t) { return t; })) < 1e-14);
        CHECK(sphere_surface(n - 1) * q.integrate([](double t) { return t * t; }) ==
              doctest::Approx(sphere_surface(n) / (n + 1)).epsilon(1e-12));
    }
}

TEST_CASE("zonal decomposition") {
    ZonalFunction one = decompose_zonal([](double) { return 1.0; }, 4, 6);
    CHECK(one.coeffs()[0] == doctest::Approx(1.0).epsilon(1e-13));
    for (int k = 1; k <= 6; ++k) CHECK(std::abs(one.coeffs()[k]) < 1e-14);

    ZonalFunction lin = decompose_zonal([](double t) { return t; }, 3, 5);
    CHECK(lin.coeffs()[1] == doctest::Approx(0.5).epsilon(1e-14));
    for (int k : {0, 2, 3, 4, 5}) CHECK(std::abs(lin.coeffs()[k]) < 1e-14);
}

TEST_CASE("extremal data") {
    ZonalFunction c = extremal_power(5, 1.0, 0.0);
    CHECK(c.kmax() == 0);
    CHECK(c(0.4) == doctest::Approx(1.0));

    ZonalFunction f = extremal_power(5, 1.0, 0.3);
    double worst = 0;
    for (int i = 0; i <= 100; ++i) {
        double t = -1 + 2.0 * i / 100;
        worst = std::max(worst, std::abs(f(t) - std::pow(1 - 0.3 * t, -1.0)));
    }
    CHECK(worst < 1e-10);
    // Coefficients decay geometrically with ratio (1 - sqrt(1 - tau^2)) / tau.
    const double decay = (1 - std::sqrt(1 - 0.09)) / 0.3;
    CHECK(std::abs(f.coeffs()[12] / f.coeffs()[11] - decay) < 0.02);

    ZonalFunction z = extremal_log(3, 0.0);
    for (double a : z.coeffs()) CHECK(a == 0.0);

    // -log(1 - tau cos x) against its Chebyshev expansion a_0 - sum 2 rho^k/k T_k with
    // rho = (1 - sqrt(1 - tau^2)) / tau.
    const double tau = 0.4;
    ZonalFunction m = extremal_log(1, tau);
    const double rho = (1 - std::sqrt(1 - tau * tau)) / tau;
    for (int k = 1; k <= 10; ++k) CHECK(m.coeffs()[k] == doctest::Approx(2 * std::pow(rho, k) / k).epsilon(1e-10));
}

TEST_CASE("boundary energies and norms") {
    ZonalFunction one = zonal_mode(3, 0, 1.0);
    CHECK(boundary_energy(one, 1) == 0.0);
    ZonalFunction y1 = zonal_mode(3, 1, 0.7);
    CHECK(boundary_energy(y1, 1) == doctest::Approx(3 * y1.mode_norms()[1]));

    ZonalFunction f = extremal_power(4, 1.5, 0.25);
    double l2 = lp_norm(f, 2.0);
    CHECK(boundary_energy(f, 0) == doctest::Approx(l2 * l2).epsilon(1e-10));

    CHECK(lp_norm(zonal_mode(6, 0, 1.0), 2.5) == doctest::Approx(std::pow(sphere_surface(6), 1 / 2.5)).epsilon(1e-12));
    CHECK(lp_norm(one, 3.0) == doctest::Approx(std::cbrt(2 * M_PI * M_PI)).epsilon(1e-12));
    ZonalFunction y3 = zonal_mode(5, 3, 1.2);
    double n2 = lp_norm(y3, 2.0);
    CHECK(n2 * n2 == doctest::Approx(y3.mode_norms()[3]).epsilon(1e-10));
}
