#include <doctest.h>

#include <cmath>
#include <random>

#include "sobtrace/conformal.hpp"

using namespace sobtrace;

namespace {

HalfSpacePoint point(std::vector<double> x, double y) { return HalfSpacePoint{std::move(x), y}; }

MultiPoly z(int vars, int i) { return MultiPoly::coordinate(vars, i); }

}  // namespace

TEST_CASE("the map B") {
    std::vector<double> b = map_B(point({0.0, 0.0}, 0.0));
    CHECK(b == std::vector<double>{0.0, 0.0, -1.0});
    std::vector<double> far = map_B(point({0.0}, 1e8));
    CHECK(far[1] == doctest::Approx(1.0).epsilon(1e-7));

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-3, 3);
    for (int i = 0; i < 100; ++i) {
        HalfSpacePoint p = point({u(rng), u(rng), u(rng)}, 0.0);
        std::vector<double> w = map_B(p);
        double r2 = 0;
        for (double c : w) r2 += c * c;
        CHECK(std::abs(std::sqrt(r2) - 1) < 1e-14);
        p.y = std::abs(u(rng)) + 0.01;
        w = map_B(p);
        r2 = 0;
        for (double c : w) r2 += c * c;
        CHECK(r2 < 1);
    }
}

TEST_CASE("conformal factor") {
    CHECK(phi(point({0.0, 0.0}, 0.0)) == 2.0);
    CHECK(phi(point({0.0, 0.0}, 1.0)) == 0.5);

    // Phi(x, y) (x, -1-y) = B(x, y) - e_{n+1}.
    std::mt19937_64 rng(5);
    for (int i = 0; i < 100; ++i) {
        HalfSpacePoint p = sample_point(4, rng);
        std::vector<double> b = map_B(p);
        double f = phi(p);
        for (int j = 0; j < 4; ++j) CHECK(std::abs(f * p.x[j] - b[j]) < 1e-13);
        CHECK(std::abs(f * (-1 - p.y) - (b[4] - 1)) < 1e-13);
    }
}

TEST_CASE("Jacobian of B") {
    Eigen::MatrixXd d0 = jacobian_B(point({0.0, 0.0, 0.0}, 0.0));
    CHECK((d0 * d0.transpose() - 4 * Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-15);

    std::mt19937_64 rng(9);
    for (int n = 1; n <= 9; ++n)
        for (int i = 0; i < 500; ++i) {
            HalfSpacePoint p = sample_point(n, rng);
            CHECK(check_orthogonality(p) < 1e-12);
            if (i < 20) {
                Eigen::MatrixXd d = jacobian_B(p);
                double f = phi(p);
                CHECK(std::abs(d.determinant()) == doctest::Approx(std::pow(f, n + 1)).epsilon(1e-11));
                Eigen::MatrixXd g = d.transpose() * d;
                g.diagonal().setZero();
                CHECK(g.cwiseAbs().maxCoeff() < 1e-12 * f * f);
            }
        }
}

TEST_CASE("calculus of powers of Phi") {
    HalfSpacePoint p = point({0.0, 0.0, 0.0}, 1.0);
    CHECK(check_phi_calculus(1.0, p).value < 1e-8);
    CHECK(check_phi_calculus(-1.0, p).value < 1e-8);
    CHECK(check_phi_calculus(1.0, point({0.0, 0.0, 0.0}, 1.0)).step_ok);
    std::mt19937_64 rng(13);
    for (int n : {3, 5, 7}) {
        HalfSpacePoint q = sample_point(n, rng);
        CHECK(check_phi_calculus(0.5 * (n - 1), q).value < 1e-6);
        CHECK(check_phi_calculus(0.7, q).value < 1e-6);
    }
}

TEST_CASE("Laplacian and gradient of F o B") {
    const int n = 4;
    MultiPoly lin = 0.7 * z(n + 1, 0) + (-1.3) * z(n + 1, 4) + MultiPoly::constant(n + 1, 0.2);
    TestField linear = TestField::polynomial(lin);
    TestField square = TestField::polynomial(MultiPoly::norm_power(n + 1, 1));
    TestField bump = TestField::gaussian({0.2, 0.1, 0.0, -0.1, 0.3}, 1.3);
    std::mt19937_64 rng(17);
    for (int i = 0; i < 10; ++i) {
        HalfSpacePoint p = sample_point(n, rng);
        CHECK(check_laplacian_identity(linear, p).value < 1e-9);
        CHECK(check_laplacian_identity(square, p).value < 1e-7);
        CHECK(check_laplacian_identity(bump, p).value < 1e-6);
        CHECK(check_gradient_identity(square, p).value < 1e-7);
        CHECK(check_gradient_identity(bump, p).value < 1e-7);
    }
}

TEST_CASE("conformal covariance of powers of the Laplacian") {
    // z_0 z_1 + z_2^2 - z_3^2 is harmonic.
    const int n = 5;
    MultiPoly h = z(n + 1, 0) * z(n + 1, 1) + z(n + 1, 2) * z(n + 1, 2) + (-1.0) * (z(n + 1, 3) * z(n + 1, 3));
    REQUIRE(h.laplacian().is_zero());
    HalfSpacePoint p = point({0.3, -0.2, 0.1, 0.4, 0.0}, 0.7);
    CHECK(check_conformal_covariance(TestField::polynomial(h), 1, p).value < 1e-6);
    CHECK(check_conformal_covariance(TestField::polynomial(z(n + 1, 0)), 1, p).value < 1e-8);

    HalfSpacePoint q = point({0.3, 0, 0, 0, 0, 0, 0}, 0.5);
    CHECK(MultiPoly::norm_power(8, 2).laplacian_power(2).value(std::vector<double>(8, 0.0)) ==
          doctest::Approx(8.0 * 8 * 10));
    CHECK(check_conformal_covariance(TestField::polynomial(MultiPoly::norm_power(8, 2)), 2, q).value < 1e-4);
    CHECK_THROWS(check_conformal_covariance(TestField::polynomial(h), 3, p));
}

TEST_CASE("covariant shift identity") {
    MultiPoly u5 = MultiPoly::norm_power(6, 2) * z(6, 0) + MultiPoly::constant(6, 1.0);
    HalfSpacePoint p = point({0.2, -0.4, 0.1, 0.3, 0.5}, 0.8);
    CHECK(check_covariant_shift(u5, 0, p).value < 1e-10);
    CHECK(check_covariant_shift(MultiPoly::norm_power(6, 1), 1, p).value < 1e-6);
    HalfSpacePoint q = point({0.2, -0.4, 0.1, 0.3, 0.5, 0.0, -0.1}, 0.8);
    CHECK(check_covariant_shift(MultiPoly::constant(8, 1.0), 2, q).value < 1e-4);
}

TEST_CASE("finite differences converge at high order") {
    const int n = 3;
    TestField bump = TestField::gaussian({0.2, 0.1, 0.0, -0.1}, 1.3);
    HalfSpacePoint p = point({0.4, -0.3, 0.2}, 0.6);
    const double h = default_step(p);
    double coarse = check_laplacian_identity(bump, p, 16 * h).value;
    double fine = check_laplacian_identity(bump, p, 8 * h).value;
    // Fourth-order stencil with one Richardson step: error ~ h^6.
    CHECK(coarse / fine > 64.0 / 4);
}
