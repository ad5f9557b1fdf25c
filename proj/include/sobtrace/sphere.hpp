// Zonal harmonic analysis on S^n: Gegenbauer polynomials, Gauss-Jacobi
// quadrature, decomposition of zonal data and the associated norms.
#pragma once

#include <functional>
#include <string>
#include <vector>

namespace sobtrace {

/// Gauss-Jacobi rule for the weight (1-t)^alpha (1+t)^beta on (-1,1).
struct QuadRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    double alpha = 0;
    double beta = 0;

    /// Highest polynomial degree integrated exactly (2N - 1).
    int exact_degree() const { return 2 * static_cast<int>(nodes.size()) - 1; }

    template <class F>
    double integrate(F&& f) const {
        double s = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
        return s;
    }
};

/// N-point Gauss-Jacobi rule (Golub-Welsch, then Newton-polished nodes).
QuadRule gauss_jacobi(int points, double alpha, double beta);
inline QuadRule gauss_legendre(int points) { return gauss_jacobi(points, 0.0, 0.0); }

/// Jacobi polynomial P_m^{(alpha,beta)}(x) by its three-term recurrence.
double jacobi_polynomial(int m, double alpha, double beta, double x);

/// C_k^{(n-1)/2}(t); Chebyshev T_k(t) when n = 1.
double gegenbauer(int k, int n, double t);

/// int_{-1}^1 G_k(t)^2 (1-t^2)^{(n-2)/2} dt for the basis used by gegenbauer().
double gegenbauer_norm_sq(int k, int n);

/// Surface area of the unit sphere S^n in R^{n+1}; omega_0 = 2.
double sphere_surface(int n);

/// Rule with alpha = beta = (n-2)/2 such that
///   int_{S^n} g(<w,e>) dw = sphere_surface(n-1) * rule.integrate(g).
/// `degree` is the number of nodes; exact through degree 2*degree - 1.
QuadRule zonal_quadrature(int n, int degree);

inline int default_quad_degree(int kmax) { return 4 * kmax + 32; }

/// A zonal function f(w) = sum_k a_k G_k(<w,e>) on S^n.
class ZonalFunction {
public:
    ZonalFunction() = default;
    ZonalFunction(int n, std::vector<double> coeffs);

    int n() const { return n_; }
    int kmax() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<double>& coeffs() const { return coeffs_; }
    /// int_{S^n} |Y_k|^2 for each k.
    const std::vector<double>& mode_norms() const { return mode_norms_; }

    double operator()(double t) const;

    /// L2 error of the reconstruction reported by decompose_zonal (0 otherwise).
    double reconstruction_error = 0.0;
    /// False when the trailing coefficients were not negligible.
    bool resolved = true;

    friend ZonalFunction operator+(const ZonalFunction& a, const ZonalFunction& b);
    friend ZonalFunction operator*(double s, const ZonalFunction& a);

private:
    int n_ = 1;
    std::vector<double> coeffs_;
    std::vector<double> mode_norms_;
};

/// A single Gegenbauer mode a * G_k on S^n.
ZonalFunction zonal_mode(int n, int k, double a, int kmax = -1);

/// Projects g onto G_0..G_kmax using the zonal quadrature (default degree
/// 4*kmax + 32 nodes).
ZonalFunction decompose_zonal(const std::function<double(double)>& g, int n, int kmax, int quad_degree = 0);

/// (1 - tau t)^(-e); if kmax < 0 the band limit grows until the trailing
/// coefficient is below 1e-14 of the leading one.
ZonalFunction extremal_power(int n, double e, double tau, int kmax = -1);

/// -log(1 - tau t), band limit chosen as for extremal_power.
ZonalFunction extremal_log(int n, double tau, int kmax = -1);

/// sum_k K^j mode_norms[k], K = k(n-1+k): j = 0,1,2,3 give int f^2,
/// int |grad f|^2, int (Lap f)^2 and int |grad Lap f|^2.
double boundary_energy(const ZonalFunction& f, int j);

/// Integral over S^n of h(f(w)) by zonal quadrature. When `warnings` is given,
/// the computation is repeated with doubled nodes and a message is appended
/// if the two results differ by more than 1e-9 relative.
double integrate_sphere(const ZonalFunction& f, const std::function<double(double)>& h, int quad_degree = 0,
                        std::vector<std::string>* warnings = nullptr);

/// (int_{S^n} |f|^p)^{1/p}.
double lp_norm(const ZonalFunction& f, double p, int quad_degree = 0, std::vector<std::string>* warnings = nullptr);

}  // namespace sobtrace
