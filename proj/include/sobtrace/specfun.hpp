// Floating-point special functions: Gamma, the Gauss hypergeometric
// series, and the radial profiles of the weighted harmonic extension.
#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/float128.hpp>

namespace sobtrace {

/// Optional extended precision (IEEE quad, 113-bit significand) for the
/// cancellation-prone evaluations close to the unit sphere.
using ExtReal = boost::multiprecision::float128;

enum class Precision { standard, extended };

class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Gamma(x) for x > 0.
double gamma_float(double x);
/// log Gamma(x) for x > 0.
double lgamma_float(double x);
/// Gamma(x) for any real x that is not a pole.
double gamma_real(double x);
/// 1/Gamma(x), zero at the poles x = 0, -1, -2, ...
double rgamma_real(double x);

inline constexpr long kMaxSeriesTerms = 1'000'000;

/// Sum of the 2F1 series at 0 <= t < 1. Terms are added until a geometric
/// tail estimate (safety factor 10) drops below 1e-14 of the partial sum;
/// throws ConvergenceError past kMaxSeriesTerms.
template <class Real>
Real gauss_2f1_series(const Real& a, const Real& b, const Real& c, const Real& t, double tol = 1e-14) {
    using std::abs;
    using std::round;
    if (c <= 0 && abs(c - round(c)) == 0) throw std::domain_error("gauss_2f1: c is a non-positive integer");
    if (t < 0 || t >= 1) throw std::domain_error("gauss_2f1: t must lie in [0,1)");
    Real sum = 1;
    Real term = 1;
    for (long m = 0; m < kMaxSeriesTerms; ++m) {
        Real ratio = (a + m) * (b + m) / ((c + m) * (m + 1)) * t;
        term *= ratio;
        sum += term;
        if (term == 0) return sum;
        Real rho = abs(ratio) > t ? Real(abs(ratio)) : t;
        if (rho < 1) {
            Real tail = 10 * abs(term) * rho / (1 - rho);
            if (tail <= tol * abs(sum)) return sum;
        }
    }
    throw ConvergenceError("gauss_2f1: series did not converge within " + std::to_string(kMaxSeriesTerms) +
                           " terms (t too close to 1)");
}

/// 2F1(a,b;c;t) by its power series.
double gauss_2f1(double a, double b, double c, double t);

/// 2F1(a,b;c;t) for t in [0,1), given 1 - t separately so that points
/// very close to t = 1 keep full relative accuracy. Uses the series for
/// t < 1/2 and the linear transformation to 1 - t otherwise (requires
/// c - a - b not an integer).
double hyp2f1(double a, double b, double c, double t, double one_minus_t);

/// Parameters of the radial equation of the weighted extension problem.
struct HypergeometricParams {
    double alpha_k = 0, beta_k = 0, gamma_k = 0;
    double b = 0;
    int k = 0;
    int n = 1;
};

/// alpha_k, beta_k are the roots of X^2 - ((n-1)/2 + k + b) X + kb/2 and
/// gamma_k = (n + 2k + 1)/2.
HypergeometricParams hypergeometric_params(double b, int k, int n);

/// The limit of ((1-r^2)/2)^b f_k'(r) as r -> 1, in closed form; 0 at k = 0.
double beckner_A(double b, int k, int n);

struct RadialValue {
    double f = 0;   // f_k(r)
    double df = 0;  // f_k'(r)
};

/// The radial profile f_k(r) = C1 r^k F(alpha_k, beta_k; gamma_k; r^2),
/// normalised so that f_k(1) = 1, and its derivative, by the series.
RadialValue weighted_radial(double b, int k, int n, double r);
RadialValue weighted_radial(double b, int k, int n, double r, Precision precision);

/// Same profile evaluated at r = 1 - x; accurate up to the sphere.
RadialValue weighted_radial_at_gap(double b, int k, int n, double x);

struct LimitEstimate {
    double value = 0;
    double error = 0;
    int ladder_end = 0;  // last ladder index j used, r = 1 - 2^-j
};

/// Numerical estimate of lim_{r->1} ((1-r^2)/2)^b f_k'(r) from the series
/// alone: a geometric ladder r = 1 - 2^{-j} followed by Richardson
/// extrapolation with the known non-integer error exponents.
LimitEstimate weighted_limit(double b, int k, int n, Precision precision = Precision::standard);

}  // namespace sobtrace
