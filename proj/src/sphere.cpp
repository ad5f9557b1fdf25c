#include "sobtrace/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace sobtrace {

double jacobi_polynomial(int m, double alpha, double beta, double x) {
    if (m == 0) return 1.0;
    double p0 = 1.0;
    double p1 = (alpha + 1) + (alpha + beta + 2) * (x - 1) / 2;
    for (int j = 2; j <= m; ++j) {
        double s = 2 * j + alpha + beta;
        double c0 = 2 * j * (j + alpha + beta) * (s - 2);
        double c1 = (s - 1) * (s * (s - 2) * x + alpha * alpha - beta * beta);
        double c2 = 2 * (j + alpha - 1) * (j + beta - 1) * s;
        double p2 = (c1 * p1 - c2 * p0) / c0;
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

QuadRule gauss_jacobi(int points, double alpha, double beta) {
    if (points < 1) throw std::domain_error("gauss_jacobi: need at least one node");
    if (!(alpha > -1 && beta > -1)) throw std::domain_error("gauss_jacobi: exponents must exceed -1");
    const int N = points;
    const double ab = alpha + beta;

    // Golub-Welsch: eigenvalues of the symmetric Jacobi matrix are the nodes.
    Eigen::VectorXd diag(N);
    Eigen::VectorXd sub(std::max(N - 1, 1));
    diag(0) = (beta - alpha) / (ab + 2);
    for (int j = 1; j < N; ++j) {
        double s = 2 * j + ab;
        diag(j) = (beta * beta - alpha * alpha) / (s * (s + 2));
    }
    for (int j = 1; j < N; ++j) {
        double s = 2 * j + ab;
        double num = 4.0 * j * (j + alpha) * (j + beta);
        double den = s * s * (s + 1);
        // (j + alpha + beta)/(s - 1) is 1 at j = 1 regardless of alpha + beta.
        double tail = j == 1 ? 1.0 : (j + ab) / (s - 1);
        sub(j - 1) = std::sqrt(num / den * tail);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub.head(N - 1), Eigen::EigenvaluesOnly);

    QuadRule rule;
    rule.alpha = alpha;
    rule.beta = beta;
    rule.nodes.resize(N);
    rule.weights.resize(N);

    // Newton polish on P_N, then weights from the derivative formula.
    const double log_const = (ab + 1) * std::log(2.0) + std::lgamma(N + alpha + 1) + std::lgamma(N + beta + 1) -
                             std::lgamma(N + ab + 1) - std::lgamma(N + 1.0);
    for (int i = 0; i < N; ++i) {
        double x = solver.eigenvalues()(i);
        double dp = 0.0;
        for (int it = 0; it < 3; ++it) {
            double p = jacobi_polynomial(N, alpha, beta, x);
            dp = (N + ab + 1) / 2 * jacobi_polynomial(N - 1, alpha + 1, beta + 1, x);
            double step = p / dp;
            double next = x - step;
            if (!(next > -1 && next < 1)) break;
            x = next;
            if (std::abs(step) < 1e-16) break;
        }
        dp = (N + ab + 1) / 2 * jacobi_polynomial(N - 1, alpha + 1, beta + 1, x);
        rule.nodes[i] = x;
        rule.weights[i] = std::exp(log_const) / ((1 - x * x) * dp * dp);
    }
    return rule;
}

double gegenbauer(int k, int n, double t) {
    if (k < 0) throw std::domain_error("gegenbauer: negative degree");
    if (n < 1) throw std::domain_error("gegenbauer: dimension must be at least 1");
    if (n == 1) {
        if (k == 0) return 1.0;
        double p0 = 1.0, p1 = t;
        for (int j = 2; j <= k; ++j) {
            double p2 = 2 * t * p1 - p0;
            p0 = p1;
            p1 = p2;
        }
        return p1;
    }
    const double lam = (n - 1) / 2.0;
    if (k == 0) return 1.0;
    double p0 = 1.0, p1 = 2 * lam * t;
    for (int j = 2; j <= k; ++j) {
        double p2 = (2 * t * (j + lam - 1) * p1 - (j + 2 * lam - 2) * p0) / j;
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

double gegenbauer_norm_sq(int k, int n) {
    if (n == 1) return k == 0 ? std::numbers::pi : std::numbers::pi / 2;
    const double lam = (n - 1) / 2.0;
    double log_h = std::log(std::numbers::pi) + (1 - 2 * lam) * std::log(2.0) + std::lgamma(k + 2 * lam) -
                   std::lgamma(k + 1.0) - 2 * std::lgamma(lam);
    return std::exp(log_h) / (k + lam);
}

double sphere_surface(int n) {
    if (n < 0) throw std::domain_error("sphere_surface: negative dimension");
    return 2 * std::pow(std::numbers::pi, (n + 1) / 2.0) / std::tgamma((n + 1) / 2.0);
}

QuadRule zonal_quadrature(int n, int degree) {
    if (degree < 1) throw std::domain_error("zonal_quadrature: degree must be positive");
    if (n < 1) throw std::domain_error("zonal_quadrature: dimension must be at least 1");
    double a = (n - 2) / 2.0;
    return gauss_jacobi(degree, a, a);
}

namespace {

// G_0..G_kmax at t.
void gegenbauer_all(int kmax, int n, double t, std::vector<double>& out) {
    out.resize(kmax + 1);
    out[0] = 1.0;
    if (kmax == 0) return;
    if (n == 1) {
        out[1] = t;
        for (int j = 2; j <= kmax; ++j) out[j] = 2 * t * out[j - 1] - out[j - 2];
        return;
    }
    const double lam = (n - 1) / 2.0;
    out[1] = 2 * lam * t;
    for (int j = 2; j <= kmax; ++j) out[j] = (2 * t * (j + lam - 1) * out[j - 1] - (j + 2 * lam - 2) * out[j - 2]) / j;
}

}  // namespace

ZonalFunction::ZonalFunction(int n, std::vector<double> coeffs) : n_(n), coeffs_(std::move(coeffs)) {
    if (n < 1) throw std::domain_error("ZonalFunction: dimension must be at least 1");
    if (coeffs_.empty()) coeffs_.push_back(0.0);
    const double surf = sphere_surface(n - 1);
    mode_norms_.resize(coeffs_.size());
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        if (!std::isfinite(coeffs_[k])) throw std::domain_error("ZonalFunction: non-finite coefficient");
        mode_norms_[k] = coeffs_[k] * coeffs_[k] * gegenbauer_norm_sq(static_cast<int>(k), n) * surf;
    }
}

double ZonalFunction::operator()(double t) const {
    std::vector<double> g;
    gegenbauer_all(kmax(), n_, t, g);
    double s = 0.0;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) s += coeffs_[k] * g[k];
    return s;
}

ZonalFunction operator+(const ZonalFunction& a, const ZonalFunction& b) {
    if (a.n() != b.n()) throw std::domain_error("ZonalFunction: dimension mismatch");
    std::vector<double> c(std::max(a.coeffs().size(), b.coeffs().size()), 0.0);
    for (std::size_t k = 0; k < a.coeffs().size(); ++k) c[k] += a.coeffs()[k];
    for (std::size_t k = 0; k < b.coeffs().size(); ++k) c[k] += b.coeffs()[k];
    return ZonalFunction(a.n(), std::move(c));
}

ZonalFunction operator*(double s, const ZonalFunction& a) {
    std::vector<double> c = a.coeffs();
    for (double& x : c) x *= s;
    return ZonalFunction(a.n(), std::move(c));
}

ZonalFunction zonal_mode(int n, int k, double a, int kmax) {
    std::vector<double> c(std::max(k, kmax) + 1, 0.0);
    c[k] = a;
    return ZonalFunction(n, std::move(c));
}

ZonalFunction decompose_zonal(const std::function<double(double)>& g, int n, int kmax, int quad_degree) {
    if (kmax < 0) throw std::domain_error("decompose_zonal: negative band limit");
    if (quad_degree <= 0) quad_degree = default_quad_degree(kmax);
    QuadRule rule = zonal_quadrature(n, quad_degree);
    std::vector<double> values(rule.nodes.size());
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) values[i] = g(rule.nodes[i]);

    std::vector<double> acc(kmax + 1, 0.0), basis;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        gegenbauer_all(kmax, n, rule.nodes[i], basis);
        for (int k = 0; k <= kmax; ++k) acc[k] += rule.weights[i] * values[i] * basis[k];
    }
    for (int k = 0; k <= kmax; ++k) acc[k] /= gegenbauer_norm_sq(k, n);
    ZonalFunction f(n, acc);

    double err = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        double d = values[i] - f(rule.nodes[i]);
        err += rule.weights[i] * d * d;
    }
    f.reconstruction_error = std::sqrt(err * sphere_surface(n - 1));

    const auto& norms = f.mode_norms();
    double biggest = std::sqrt(*std::max_element(norms.begin(), norms.end()));
    if (kmax >= 1 && biggest > 0) {
        double last = std::sqrt(std::max(norms[kmax], norms[kmax - 1]));
        f.resolved = last <= 1e-10 * biggest;
    }
    return f;
}

namespace {

ZonalFunction adaptive_decompose(const std::function<double(double)>& g, int n, double tau, int kmax) {
    if (!(tau >= 0 && tau < 1)) throw std::domain_error("extremal: tau must lie in [0,1)");
    if (kmax >= 0) return decompose_zonal(g, n, kmax);
    if (tau == 0) return decompose_zonal(g, n, 0);
    int k = static_cast<int>(std::ceil(std::log(1e-14) / std::log(tau))) + 8;
    k = std::max(k, 8);
    for (;;) {
        ZonalFunction f = decompose_zonal(g, n, k);
        const auto& norms = f.mode_norms();
        double lead = std::sqrt(*std::max_element(norms.begin(), norms.end()));
        if (std::sqrt(norms.back()) < 1e-14 * lead || k >= 512) return f;
        k += 8;
    }
}

}  // namespace

ZonalFunction extremal_power(int n, double e, double tau, int kmax) {
    if (!(e > 0)) throw std::domain_error("extremal_power: exponent must be positive");
    return adaptive_decompose([=](double t) { return std::pow(1 - tau * t, -e); }, n, tau, kmax);
}

ZonalFunction extremal_log(int n, double tau, int kmax) {
    return adaptive_decompose([=](double t) { return -std::log1p(-tau * t); }, n, tau, kmax);
}

double boundary_energy(const ZonalFunction& f, int j) {
    if (j < 0 || j > 3) throw std::domain_error("boundary_energy: order must be 0..3");
    double s = 0.0;
    const auto& norms = f.mode_norms();
    for (std::size_t k = 0; k < norms.size(); ++k) {
        double K = static_cast<double>(k) * (f.n() - 1.0 + static_cast<double>(k));
        s += std::pow(K, j) * norms[k];
    }
    return s;
}

namespace {

double integrate_with(const ZonalFunction& f, const std::function<double(double)>& h, int quad_degree) {
    QuadRule rule = zonal_quadrature(f.n(), quad_degree);
    double s = rule.integrate([&](double t) { return h(f(t)); });
    return s * sphere_surface(f.n() - 1);
}

}  // namespace

double integrate_sphere(const ZonalFunction& f, const std::function<double(double)>& h, int quad_degree,
                        std::vector<std::string>* warnings) {
    if (quad_degree <= 0) quad_degree = default_quad_degree(f.kmax());
    double value = integrate_with(f, h, quad_degree);
    if (warnings != nullptr) {
        double refined = integrate_with(f, h, 2 * quad_degree);
        double rel = std::abs(refined - value) / std::max(std::abs(refined), 1e-300);
        if (rel > 1e-9) {
            std::ostringstream os;
            os << "sphere quadrature under-resolved: doubling " << quad_degree << " nodes moved the result by " << rel
               << " relative";
            warnings->push_back(os.str());
        }
    }
    return value;
}

double lp_norm(const ZonalFunction& f, double p, int quad_degree, std::vector<std::string>* warnings) {
    if (!(p >= 1)) throw std::domain_error("lp_norm: p must be at least 1");
    double integral = integrate_sphere(f, [p](double v) { return std::pow(std::abs(v), p); }, quad_degree, warnings);
    return std::pow(integral, 1.0 / p);
}

}  // namespace sobtrace
