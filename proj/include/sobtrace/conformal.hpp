// The conformal map B from the upper half-space R^{n+1}_+ to the unit ball,
// its conformal factor Phi, and finite-difference checks of the calculus
// identities they satisfy.
#pragma once

#include <map>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sobtrace/specfun.hpp"

namespace sobtrace {

/// (x, y) with x in R^n and y > 0.
struct HalfSpacePoint {
    std::vector<double> x;
    double y = 0;
    int n() const { return static_cast<int>(x.size()); }
};

/// B(x,y) = (2x, |x|^2 + y^2 - 1) / ((1+y)^2 + |x|^2).
std::vector<double> map_B(const HalfSpacePoint& p);

/// Phi(x,y) = 2 / ((1+y)^2 + |x|^2).
double phi(const HalfSpacePoint& p);

/// DB as an (n+1)x(n+1) matrix; its rows are the gradients of the components of B.
Eigen::MatrixXd jacobian_B(const HalfSpacePoint& p);

/// max |DB DB^t - Phi^2 I| / Phi^2.
double check_orthogonality(const HalfSpacePoint& p);

/// Sparse polynomial in d real variables with floating coefficients.
class MultiPoly {
public:
    using Exponents = std::vector<int>;

    MultiPoly() = default;
    explicit MultiPoly(int vars) : vars_(vars) {}

    static MultiPoly constant(int vars, double c);
    static MultiPoly coordinate(int vars, int i);
    /// |z|^{2p}
    static MultiPoly norm_power(int vars, int p);

    int vars() const { return vars_; }
    const std::map<Exponents, double>& terms() const { return terms_; }
    void add(const Exponents& e, double c);

    template <class Real>
    Real value(const std::vector<Real>& z) const {
        Real s = 0;
        for (const auto& [e, c] : terms_) {
            Real t = c;
            for (int i = 0; i < vars_; ++i)
                for (int p = 0; p < e[i]; ++p) t *= z[i];
            s += t;
        }
        return s;
    }

    MultiPoly derivative(int i) const;
    MultiPoly laplacian() const;
    MultiPoly laplacian_power(int k) const;
    bool is_zero() const { return terms_.empty(); }

    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b);
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator*(double s, MultiPoly a);

private:
    int vars_ = 0;
    std::map<Exponents, double> terms_;
};

/// A smooth function on a neighbourhood of the closed ball with exact
/// derivatives: either a polynomial or exp(-a |z - c|^2).
class TestField {
public:
    enum class Family { polynomial, gaussian };

    static TestField polynomial(MultiPoly p, std::string tag = "polynomial");
    static TestField gaussian(std::vector<double> center, double a, std::string tag = "gaussian");

    Family family() const { return family_; }
    const std::string& tag() const { return tag_; }
    int vars() const { return vars_; }
    const MultiPoly& poly() const { return poly_; }

    double value(const std::vector<double>& z) const;
    ExtReal value(const std::vector<ExtReal>& z) const;
    std::vector<double> gradient(const std::vector<double>& z) const;
    /// Delta^k F at z, exactly.
    double laplacian_power(int k, const std::vector<double>& z) const;

private:
    Family family_ = Family::polynomial;
    std::string tag_;
    int vars_ = 0;
    MultiPoly poly_;
    std::vector<double> center_;
    double a_ = 1;
};

/// Result of a finite-difference identity check.
struct Residual {
    double value = 0;     // relative residual
    bool step_ok = true;  // false if the Richardson pair disagreed badly
};

/// Uniform sample with x in [-3,3]^n and y in [0.1, 3].
HalfSpacePoint sample_point(int n, std::mt19937_64& rng);

/// FD step default: 1e-2 scaled by the local feature size 1/Phi.
double default_step(const HalfSpacePoint& p);

/// grad Phi^a = -a Phi^{a+1} (x, 1+y) and Delta Phi^a = -a(n-1-2a) Phi^{a+1}.
Residual check_phi_calculus(double a, const HalfSpacePoint& p, double step = 0);

/// Phi^{-2} Delta(F o B) = (Delta F)(B) + (n-1) <grad F(B), (-x, 1+y)>.
Residual check_laplacian_identity(const TestField& F, const HalfSpacePoint& p, double step = 0);

/// <grad(F o B), (x, 1+y)> = Phi <grad F(B), (-x, 1+y)>.
Residual check_gradient_identity(const TestField& F, const HalfSpacePoint& p, double step = 0);

/// Delta^k (F o B Phi^{(n+1-2k)/2}) = (Delta^k F) o B Phi^{(n+1+2k)/2}, with
/// nested FD Laplacians on the left. Extended precision evaluates the
/// stencils in quad precision.
Residual check_conformal_covariance(const TestField& F, int kk, const HalfSpacePoint& p, double step = 0,
                                    Precision precision = Precision::standard);

/// Delta(Phi^{-m-1} Delta^m u) = Phi^{-m} Delta^{m+1}(Phi^{-1} u) for a
/// polynomial u on the half-space; the right side is exact.
Residual check_covariant_shift(const MultiPoly& u, int m, const HalfSpacePoint& p, double step = 0);

}  // namespace sobtrace
