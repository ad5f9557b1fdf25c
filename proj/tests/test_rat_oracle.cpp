// Cross-checks the rational arithmetic against GMP's mpq_class on random
// operands.
#include <doctest.h>

#include <gmpxx.h>

#include <random>
#include <string>

#include "sobtrace/exact.hpp"

using namespace sobtrace;

namespace {

std::string as_text(const mpq_class& q) { return q.get_den() == 1 ? q.get_num().get_str() : q.get_str(); }

}  // namespace

TEST_CASE("random arithmetic agrees with GMP") {
    std::mt19937_64 rng(12345);
    std::uniform_int_distribution<long long> big(-1000000000000LL, 1000000000000LL);
    std::uniform_int_distribution<long long> den(1, 1000000000LL);
    for (int i = 0; i < 1000; ++i) {
        const long long an = big(rng), ad = den(rng), bn = big(rng), bd = den(rng);
        Rat a(an, ad), b(bn, bd);
        mpq_class qa(std::to_string(an) + "/" + std::to_string(ad)), qb(std::to_string(bn) + "/" + std::to_string(bd));
        qa.canonicalize();
        qb.canonicalize();
        CHECK((a + b).str() == as_text(qa + qb));
        CHECK((a - b).str() == as_text(qa - qb));
        CHECK((a * b).str() == as_text(qa * qb));
        if (bn != 0) CHECK((a / b).str() == as_text(qa / qb));
        CHECK((a < b) == (qa < qb));
    }
}

TEST_CASE("pochhammer agrees with GMP products") {
    for (int m = 0; m <= 25; ++m) {
        mpq_class x(7, 3), prod(1);
        for (int j = 0; j < m; ++j) prod *= x + j;
        prod.canonicalize();
        CHECK(pochhammer(Rat(7, 3), static_cast<unsigned>(m)).str() == as_text(prod));
    }
}
