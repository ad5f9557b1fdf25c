#include "sobtrace/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Dense>

namespace sobtrace {

double gamma_float(double x) {
    if (!(x > 0)) throw std::domain_error("gamma_float: argument must be positive");
    return std::tgamma(x);
}

double lgamma_float(double x) {
    if (!(x > 0)) throw std::domain_error("lgamma_float: argument must be positive");
    return std::lgamma(x);
}

namespace {

bool is_pole(double x) { return x <= 0 && x == std::round(x); }

}  // namespace

double gamma_real(double x) {
    if (is_pole(x)) throw std::domain_error("gamma_real: pole at non-positive integer");
    return std::tgamma(x);
}

double rgamma_real(double x) { return is_pole(x) ? 0.0 : 1.0 / std::tgamma(x); }

double gauss_2f1(double a, double b, double c, double t) { return gauss_2f1_series<double>(a, b, c, t); }

double hyp2f1(double a, double b, double c, double t, double one_minus_t) {
    if (t < 0.5) return gauss_2f1(a, b, c, t);
    double s = c - a - b;
    if (std::abs(s - std::round(s)) < 1e-12)
        throw std::domain_error("hyp2f1: integer c-a-b is not supported near t = 1");
    // F(a,b;c;t) = G(c)G(s)/(G(c-a)G(c-b)) F(a,b;1-s;1-t)
    //            + (1-t)^s G(c)G(-s)/(G(a)G(b)) F(c-a,c-b;1+s;1-t)
    double gc = gamma_real(c);
    double first = gc * gamma_real(s) * rgamma_real(c - a) * rgamma_real(c - b);
    double second = gc * gamma_real(-s) * rgamma_real(a) * rgamma_real(b);
    double value = 0.0;
    if (first != 0.0) value += first * gauss_2f1(a, b, 1 - s, one_minus_t);
    if (second != 0.0) value += second * std::pow(one_minus_t, s) * gauss_2f1(c - a, c - b, 1 + s, one_minus_t);
    return value;
}

namespace {

template <class Real>
struct Params {
    Real alpha, beta, gamma;
};

template <class Real>
Params<Real> params_in(double b_in, int k, int n) {
    using std::sqrt;
    Real b = b_in;
    Real sum = Real(n - 1) / 2 + k + b;
    Real prod = Real(k) * b / 2;
    Real disc = sum * sum - 4 * prod;
    Params<Real> p;
    p.alpha = (sum + sqrt(disc)) / 2;
    p.beta = p.alpha == 0 ? Real(0) : Real(prod / p.alpha);
    p.gamma = Real(n + 2 * k + 1) / 2;
    return p;
}

template <class Real>
Real log_c1(const Params<Real>& p) {
    using std::lgamma;
    return lgamma(p.gamma - p.alpha) + lgamma(p.gamma - p.beta) - lgamma(p.gamma) -
           lgamma(p.gamma - p.alpha - p.beta);
}

void check_b(double b) {
    if (!(std::abs(b) < 1)) throw std::domain_error("weighted extension requires |b| < 1");
}

// r^k F(alpha,beta;gamma;r^2) and its derivative, scaled by C1, from the series.
template <class Real>
std::pair<Real, Real> radial_series(double b, int k, int n, const Real& r) {
    using std::exp;
    using std::pow;
    check_b(b);
    if (k == 0) return {Real(1), Real(0)};
    if (b == 0) return {pow(r, k), Real(k) * pow(r, k - 1)};
    auto p = params_in<Real>(b, k, n);
    Real c1 = exp(log_c1(p));
    Real t = r * r;
    Real f1 = gauss_2f1_series<Real>(p.alpha, p.beta, p.gamma, t);
    Real f2 = gauss_2f1_series<Real>(p.alpha + 1, p.beta + 1, p.gamma + 1, t);
    Real rk = pow(r, k - 1);
    Real value = c1 * rk * r * f1;
    Real slope = c1 * (Real(k) * rk * f1 + 2 * p.alpha * p.beta / p.gamma * rk * t * f2);
    return {value, slope};
}

}  // namespace

HypergeometricParams hypergeometric_params(double b, int k, int n) {
    check_b(b);
    auto p = params_in<double>(b, k, n);
    return {p.alpha, p.beta, p.gamma, b, k, n};
}

double beckner_A(double b, int k, int n) {
    check_b(b);
    if (k == 0) return 0.0;
    auto p = params_in<double>(b, k, n);
    double log_ratio = std::lgamma(p.beta + 1 - b) + std::lgamma(p.alpha + 1 - b) - std::lgamma(p.alpha + 1) -
                       std::lgamma(p.beta + 1);
    return std::pow(2.0, -b) * gamma_real(b + 1) / gamma_real(1 - b) * std::exp(log_ratio) * k;
}

RadialValue weighted_radial(double b, int k, int n, double r) {
    return weighted_radial(b, k, n, r, Precision::standard);
}

RadialValue weighted_radial(double b, int k, int n, double r, Precision precision) {
    if (!(r >= 0 && r < 1)) throw std::domain_error("weighted_radial: r must lie in [0,1)");
    if (precision == Precision::extended) {
        auto [f, df] = radial_series<ExtReal>(b, k, n, ExtReal(r));
        return {f.convert_to<double>(), df.convert_to<double>()};
    }
    auto [f, df] = radial_series<double>(b, k, n, r);
    return {f, df};
}

RadialValue weighted_radial_at_gap(double b, int k, int n, double x) {
    check_b(b);
    if (!(x > 0 && x <= 1)) throw std::domain_error("weighted_radial_at_gap: gap must lie in (0,1]");
    double r = 1 - x;
    double omt = x * (2 - x);
    double t = r * r;
    if (k == 0) return {1.0, 0.0};
    if (b == 0) return {std::pow(r, k), k * std::pow(r, k - 1)};
    if (t < 0.5) return weighted_radial(b, k, n, r);
    auto p = params_in<double>(b, k, n);
    double c1 = std::exp(log_c1(p));
    double f1 = hyp2f1(p.alpha, p.beta, p.gamma, t, omt);
    double f2 = hyp2f1(p.alpha + 1, p.beta + 1, p.gamma + 1, t, omt);
    double rk = std::pow(r, k - 1);
    return {c1 * rk * r * f1, c1 * (k * rk * f1 + 2 * p.alpha * p.beta / p.gamma * rk * t * f2)};
}

namespace {

// Error exponents of ((1-r^2)/2)^b f'(r) in powers of h = 1 - r.
std::vector<double> error_exponents(double b, std::size_t count) {
    std::vector<double> out;
    if (b == 0) {
        for (std::size_t i = 1; i <= count; ++i) out.push_back(static_cast<double>(i));
        return out;
    }
    double frac = b > 0 ? b : 1 + b;
    for (int i = 0; out.size() < 2 * count; ++i) {
        out.push_back(frac + i);
        out.push_back(1.0 + i);
    }
    std::sort(out.begin(), out.end());
    out.resize(count);
    return out;
}

// Fits g(h) = L + sum_i c_i h^{p_i} through the given samples; returns L.
double extrapolate(const std::vector<double>& h, const std::vector<long double>& g, const std::vector<double>& p) {
    using Mat = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
    using Vec = Eigen::Matrix<long double, Eigen::Dynamic, 1>;
    const auto m = static_cast<Eigen::Index>(g.size());
    Mat a(m, m);
    Vec rhs(m);
    long double scale = h.back();
    for (Eigen::Index row = 0; row < m; ++row) {
        a(row, 0) = 1;
        for (Eigen::Index col = 1; col < m; ++col)
            a(row, col) = std::pow(static_cast<long double>(h[row]) / scale, static_cast<long double>(p[col - 1]));
        rhs(row) = g[row];
    }
    Vec sol = a.colPivHouseholderQr().solve(rhs);
    return static_cast<double>(sol(0));
}

long double ladder_value(double b, int k, int n, int j, Precision precision) {
    if (precision == Precision::extended) {
        ExtReal h = ldexp(ExtReal(1), -j);
        ExtReal r = 1 - h;
        auto [f, df] = radial_series<ExtReal>(b, k, n, r);
        ExtReal w = pow(h * (2 - h) / 2, b);
        return (w * df).convert_to<long double>();
    }
    double h = std::ldexp(1.0, -j);
    auto [f, df] = radial_series<double>(b, k, n, 1 - h);
    return std::pow(h * (2 - h) / 2, b) * df;
}

}  // namespace

LimitEstimate weighted_limit(double b, int k, int n, Precision precision) {
    check_b(b);
    if (k < 1) throw std::domain_error("weighted_limit: k must be positive");
    constexpr int j_first = 4;
    constexpr int j_last = 40;
    constexpr std::size_t max_unknowns = 7;
    std::vector<double> hs;
    std::vector<long double> gs;
    std::vector<double> estimates;
    int last_j = j_first - 1;
    for (int j = j_first; j <= j_last; ++j) {
        long double g = 0;
        try {
            g = ladder_value(b, k, n, j, precision);
        } catch (const ConvergenceError&) {
            break;
        }
        hs.push_back(std::ldexp(1.0, -j));
        gs.push_back(g);
        last_j = j;
        std::size_t use = std::min(hs.size(), max_unknowns);
        std::vector<double> h_tail(hs.end() - static_cast<long>(use), hs.end());
        std::vector<long double> g_tail(gs.end() - static_cast<long>(use), gs.end());
        estimates.push_back(use == 1 ? static_cast<double>(g) : extrapolate(h_tail, g_tail, error_exponents(b, use - 1)));
        if (estimates.size() >= 3) {
            double e1 = std::abs(estimates.back() - estimates[estimates.size() - 2]);
            double e2 = std::abs(estimates[estimates.size() - 2] - estimates[estimates.size() - 3]);
            if (std::max(e1, e2) < 1e-12 * std::max(1.0, std::abs(estimates.back()))) break;
        }
    }
    if (estimates.size() < 2) throw ConvergenceError("weighted_limit: ladder too short");
    LimitEstimate out;
    out.value = estimates.back();
    out.error = std::abs(estimates.back() - estimates[estimates.size() - 2]);
    out.ladder_end = last_j;
    if (!(out.error < 1e-4 * std::max(1.0, std::abs(out.value))))
        throw ConvergenceError("weighted_limit: ladder did not stabilise to 1e-4");
    return out;
}

}  // namespace sobtrace
