#include <doctest.h>

#include <cmath>

#include "sobtrace/specfun.hpp"

using namespace sobtrace;

// Reference values below were computed independently with mpmath at 30 digits.

TEST_CASE("gamma function") {
    CHECK(gamma_float(1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(gamma_float(0.5) == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-15));
    CHECK(gamma_float(5.0) == doctest::Approx(24.0).epsilon(1e-15));
    CHECK(gamma_float(4.3) == doctest::Approx(8.855343360454034).epsilon(1e-14));
    CHECK(lgamma_float(57.2) == doctest::Approx(173.16000143329242).epsilon(1e-14));
}

TEST_CASE("hypergeometric series") {
    CHECK(gauss_2f1(0.3, 1.7, 2.2, 0.0) == 1.0);
    CHECK(gauss_2f1(1.0, 1.0, 2.0, 0.5) == doctest::Approx(2 * std::log(2.0)).epsilon(1e-14));
    CHECK(gauss_2f1(0.4, 0.0, 1.3, 0.8) == 1.0);
    CHECK(gauss_2f1(0.5, 1.25, 2.5, 0.3) == doctest::Approx(1.0883169804273110701).epsilon(1e-14));
    CHECK(gauss_2f1(1.5, -0.25, 3.5, 0.9) == doctest::Approx(0.87369864999320745114).epsilon(1e-13));
    CHECK_THROWS_AS(gauss_2f1(1.0, 1.0, 2.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(gauss_2f1(1.0, 1.0, -2.0, 0.5), std::domain_error);
}

TEST_CASE("connection formula near t = 1") {
    const double t = 0.999;
    CHECK(hyp2f1(0.75, 0.5, 2.0, t, 1 - t) == doctest::Approx(1.51528091680172974).epsilon(1e-13));
    // Series and connection formula agree where both apply.
    CHECK(hyp2f1(0.5, 1.25, 2.5, 0.6, 0.4) == doctest::Approx(gauss_2f1(0.5, 1.25, 2.5, 0.6)).epsilon(1e-13));
}

TEST_CASE("limit coefficient A(b,k)") {
    CHECK(beckner_A(0.3, 0, 4) == 0.0);
    for (int k = 1; k <= 6; ++k) CHECK(beckner_A(0.0, k, 5) == doctest::Approx(k).epsilon(1e-14));
    CHECK(beckner_A(0.5, 1, 3) == doctest::Approx(0.33786741083812628401).epsilon(1e-12));
    CHECK(beckner_A(-0.5, 2, 4) == doctest::Approx(8.9120097421579246878).epsilon(1e-12));
    CHECK(beckner_A(0.25, 5, 3) == doctest::Approx(2.2734031261009525539).epsilon(1e-12));
    CHECK(beckner_A(0.5, 8, 4) == doctest::Approx(1.2565393556842434206).epsilon(1e-12));
}

TEST_CASE("weighted radial profile") {
    for (double r : {0.0, 0.3, 0.9}) {
        CHECK(weighted_radial(0.0, 3, 4, r).f == doctest::Approx(std::pow(r, 3)).epsilon(1e-14));
        CHECK(weighted_radial(0.4, 0, 4, r).f == doctest::Approx(1.0));
    }
    CHECK(weighted_radial(0.5, 1, 3, 0.0).f == 0.0);
    RadialValue v = weighted_radial(0.5, 2, 3, 0.3);
    CHECK(v.f == doctest::Approx(0.059237525679499920046).epsilon(1e-13));
    CHECK(v.df == doctest::Approx(0.39974036968402532025).epsilon(1e-13));
    RadialValue near = weighted_radial_at_gap(0.5, 2, 3, 1e-3);
    CHECK(near.f == doctest::Approx(0.96500004903429858121).epsilon(1e-12));
    CHECK(near.df == doctest::Approx(17.534050862234944301).epsilon(1e-11));
    RadialValue neg = weighted_radial(-0.5, 3, 4, 0.8);
    CHECK(neg.f == doctest::Approx(0.61240891395107367657).epsilon(1e-13));
    CHECK(neg.df == doctest::Approx(2.0185052441541175787).epsilon(1e-12));
}

TEST_CASE("numerical limit against the closed form") {
    LimitEstimate zero = weighted_limit(0.0, 3, 5);
    CHECK(zero.value == doctest::Approx(3.0).epsilon(1e-8));
    LimitEstimate half = weighted_limit(0.5, 1, 3);
    CHECK(std::abs(half.value - beckner_A(0.5, 1, 3)) < 1e-4);
    LimitEstimate negative = weighted_limit(-0.5, 2, 4);
    CHECK(std::abs(negative.value - beckner_A(-0.5, 2, 4)) < 1e-4 * beckner_A(-0.5, 2, 4));
}
