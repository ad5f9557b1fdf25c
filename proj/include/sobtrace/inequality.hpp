// Both sides of the sharp trace, Beckner-type, sphere Sobolev and
// Lebedev-Milin inequalities on the unit ball, the exact coefficient
// identities behind them, and perturbation probes at extremals.
#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "sobtrace/exact.hpp"
#include "sobtrace/sphere.hpp"

namespace sobtrace {

struct Tolerance {
    double equality = 1e-6;  // |rel_slack| bound when equality is expected
    double strict = 1e-9;    // allowed negative slack, relative to rhs
};

struct InequalityReport {
    std::string theorem;
    int m = 1;
    int n = 1;
    int kmax = 0;
    int quad_degree = 0;
    double lhs = 0;
    double rhs = 0;
    double sharp_constant = 0;
    double slack = 0;
    double rel_slack = 0;
    bool equality_expected = false;
    double tolerance = 0;
    bool pass = false;
    /// Additional named quantities (cross-checks, parameters).
    std::vector<std::pair<std::string, double>> extras;
    std::vector<std::string> notes;
    std::vector<std::string> warnings;
};

/// Fills slack, rel_slack, tolerance and pass from lhs and rhs. A report
/// already marked with a failed cross-check (`forced_fail`) never passes.
void finalize(InequalityReport& r, const Tolerance& tol, bool forced_fail = false);

/// Gamma((n+s)/2) / Gamma((n-s)/2) * omega_n^{s/n}, 0 < s < n.
double sharp_constant(int n, double s);

/// lambda_k(gamma) = Gamma(k + n/2 + gamma) / Gamma(k + n/2 - gamma).
double sphere_multiplier(int k, int n, double gamma);

/// prefactor(m) = sqrt(pi) Gamma(m) / Gamma(m - 1/2) = 1, 2, 8/3, 16/5.
Rat trace_prefactor(int m);

/// prefactor(m) lambda_k((2m-1)/2) - S_{2m}(k, n) as a polynomial in (k, n).
RationalPoly boundary_multiplier(int m);

/// The boundary multiplier written as sum_j coeff_j(n) K^j, K = k(n-1+k),
/// by exact division; element j multiplies int |Y_k|^2 K^j.
const std::vector<RationalPoly>& derived_coefficients(int m);

/// The published coefficients in the same ordering (lowest power of K
/// first): {(n-1)/2}, {(n+1)(n-3)/2, 2}, {c3, c2, c1}, {d4, d3, d2, d1}.
std::vector<RationalPoly> published_coefficients(int m);

struct IdentityResult {
    int m = 1;
    bool ok = false;
    RationalPoly residual;  // prefactor lambda_k - S - sum_j published_j K^j
    std::vector<RationalPoly> published;
    std::vector<RationalPoly> derived;
    std::vector<std::string> notes;
};

/// Checks the published recast identity exactly as a polynomial in (k, n).
IdentityResult coefficient_identity(int m);

/// lambda_k(2) - (K + n(n-2)/4)(K + (n+2)(n-4)/4); zero iff the fourth-order
/// multiplier factors as stated.
RationalPoly p4_factorization_residual();

/// Trace inequality of order 2m on the ball, n > 2m - 1.
InequalityReport trace_report(int m, int n, const ZonalFunction& f, bool equality_expected, const Tolerance& tol = {},
                              int quad_degree = 0);

/// Beckner-type inequality of order 2m with parameter 0 < s < n/(2m-1).
InequalityReport beckner_report(int m, int n, double s, const ZonalFunction& f, bool equality_expected,
                                const Tolerance& tol = {}, int quad_degree = 0);

/// Weighted energy int |grad u|^2 ((1-|z|^2)/2)^b of the weighted-harmonic
/// extension, by per-mode radial quadrature on geometrically graded panels
/// with a final Gauss-Jacobi panel at r = 1.
double weighted_energy_quadrature(double b, const ZonalFunction& f);

/// sum_k A(b, k) int |Y_k|^2.
double weighted_energy_spectral(double b, const ZonalFunction& f);

/// Weighted Beckner inequality of order two with weight exponent 1 - s,
/// 0 < s < min(2, n).
InequalityReport weighted_beckner_report(int n, double s, const ZonalFunction& f, bool equality_expected,
                                         const Tolerance& tol = {}, int quad_degree = 0);

/// Sharp Sobolev inequality for the conformally invariant operator of
/// order 2 gamma on S^n, 0 < gamma < n/2.
InequalityReport sphere_sobolev_report(int n, double gamma, const ZonalFunction& f, bool equality_expected,
                                       const Tolerance& tol = {}, int quad_degree = 0);

/// C_m = n / (2 prefactor(m) Gamma(n) omega_n) at n = 2m - 1; the constant
/// in front of the interior energy in the Lebedev-Milin inequality.
double lm_constant(int m);

/// Lebedev-Milin inequality of order 2m on S^{2m-1}; the mean of f is
/// subtracted before evaluation.
InequalityReport lm_report(int m, const ZonalFunction& f, bool equality_expected, const Tolerance& tol = {},
                           int quad_degree = 0);

struct ScanPoint {
    double epsilon = 0;
    double slack = 0;
    double rel_slack = 0;
};

struct ScanResult {
    std::vector<ScanPoint> curve;
    bool zero_at_origin = false;  // slack(0) within the equality tolerance
    bool positive = false;        // slack(eps) > 0 for every eps != 0
    bool monotone = false;        // slack increases with |eps| on each side
};

/// Evaluates `report` on f0 + eps * |f0(1)| * G_j / G_j(1) for each eps.
ScanResult extremality_scan(const std::function<InequalityReport(const ZonalFunction&)>& report,
                            const ZonalFunction& f0, int j, const std::vector<double>& epsilons,
                            const Tolerance& tol = {});

}  // namespace sobtrace
