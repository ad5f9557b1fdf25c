#include "sobtrace/conformal.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace sobtrace {

namespace {

template <class Real>
using Field = std::function<Real(const std::vector<Real>&)>;

// X = (x, y) as one vector of length n + 1.
std::vector<double> pack(const HalfSpacePoint& p) {
    std::vector<double> X = p.x;
    X.push_back(p.y);
    return X;
}

template <class Real>
Real denominator(const std::vector<Real>& X) {
    const std::size_t n = X.size() - 1;
    Real m = (1 + X[n]) * (1 + X[n]);
    for (std::size_t i = 0; i < n; ++i) m += X[i] * X[i];
    return m;
}

template <class Real>
Real phi_at(const std::vector<Real>& X) {
    return 2 / denominator(X);
}

template <class Real>
std::vector<Real> B_at(const std::vector<Real>& X) {
    const std::size_t n = X.size() - 1;
    Real m = denominator(X);
    Real norm2 = X[n] * X[n] - 1;
    std::vector<Real> out(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = 2 * X[i] / m;
        norm2 += X[i] * X[i];
    }
    out[n] = norm2 / m;
    return out;
}

// Fourth-order central second difference summed over all directions.
template <class Real>
Real fd_laplacian_raw(const Field<Real>& u, const std::vector<Real>& X, Real h) {
    Real center = u(X);
    Real sum = 0;
    std::vector<Real> Y = X;
    for (std::size_t i = 0; i < X.size(); ++i) {
        Real f[4];
        const int offsets[4] = {-2, -1, 1, 2};
        for (int s = 0; s < 4; ++s) {
            Y[i] = X[i] + Real(offsets[s]) * h;
            f[s] = u(Y);
        }
        Y[i] = X[i];
        sum += -f[0] + 16 * f[1] - 30 * center + 16 * f[2] - f[3];
    }
    return sum / (12 * h * h);
}

// Richardson pair (16 D(h/2) - D(h)) / 15.
template <class Real>
Real fd_laplacian(const Field<Real>& u, const std::vector<Real>& X, Real h, Real* pair_gap = nullptr) {
    Real coarse = fd_laplacian_raw(u, X, h);
    Real fine = fd_laplacian_raw(u, X, h / 2);
    if (pair_gap != nullptr) {
        using std::abs;
        *pair_gap = abs(fine - coarse);
    }
    return (16 * fine - coarse) / 15;
}

template <class Real>
Real fd_laplacian_power(const Field<Real>& u, int k, const std::vector<Real>& X, Real h, Real* pair_gap = nullptr) {
    if (k == 0) return u(X);
    Field<Real> inner = u;
    for (int level = 1; level < k; ++level) {
        Field<Real> prev = inner;
        inner = [prev, h](const std::vector<Real>& Z) { return fd_laplacian<Real>(prev, Z, h); };
    }
    return fd_laplacian<Real>(inner, X, h, pair_gap);
}

std::vector<double> fd_gradient(const Field<double>& u, const std::vector<double>& X, double h) {
    auto raw = [&](double step, std::size_t i) {
        std::vector<double> Y = X;
        double f[4];
        const int offsets[4] = {-2, -1, 1, 2};
        for (int s = 0; s < 4; ++s) {
            Y[i] = X[i] + offsets[s] * step;
            f[s] = u(Y);
        }
        return (f[0] - 8 * f[1] + 8 * f[2] - f[3]) / (12 * step);
    };
    std::vector<double> g(X.size());
    for (std::size_t i = 0; i < X.size(); ++i) g[i] = (16 * raw(h / 2, i) - raw(h, i)) / 15;
    return g;
}

double norm(const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// (x, 1 + y) and (-x, 1 + y).
std::vector<double> radial_direction(const HalfSpacePoint& p, double sign_x) {
    std::vector<double> v;
    for (double xi : p.x) v.push_back(sign_x * xi);
    v.push_back(1 + p.y);
    return v;
}

Residual relative(double lhs, double rhs, double scale, double gap = 0) {
    Residual r;
    double denom = std::max(std::abs(rhs), scale);
    r.value = denom > 0 ? std::abs(lhs - rhs) / denom : std::abs(lhs - rhs);
    // The Richardson pair should agree to well within the stencil's accuracy.
    r.step_ok = !(gap > 1e-2 * std::max(denom, 1e-300)) && std::isfinite(lhs);
    return r;
}

void check_point(const HalfSpacePoint& p) {
    if (p.x.empty()) throw std::domain_error("half-space point needs n >= 1");
    if (!(p.y > 0)) throw std::domain_error("half-space point must have y > 0");
}

}  // namespace

std::vector<double> map_B(const HalfSpacePoint& p) { return B_at(pack(p)); }

double phi(const HalfSpacePoint& p) { return phi_at(pack(p)); }

Eigen::MatrixXd jacobian_B(const HalfSpacePoint& p) {
    const int n = p.n();
    const std::vector<double> X = pack(p);
    const double m = denominator(X);
    const double y1 = 1 + p.y;
    Eigen::MatrixXd J(n + 1, n + 1);
    // DB = (2 / M^2) * [ M delta_ij - 2 x_i x_j ,  -2 x_i (1+y) ;
    //                    2 x_j (1+y)             ,  M - 2 (1+y)^2 + 2(1+y)... ]
    // obtained by differentiating B componentwise.
    double x2 = 0;
    for (double xi : p.x) x2 += xi * xi;
    const double top = x2 + p.y * p.y - 1;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) J(i, j) = 2 * ((i == j ? m : 0.0) - 2 * p.x[i] * p.x[j]) / (m * m);
        J(i, n) = -4 * p.x[i] * y1 / (m * m);
    }
    for (int j = 0; j < n; ++j) J(n, j) = (2 * p.x[j] * m - top * 2 * p.x[j]) / (m * m);
    J(n, n) = (2 * p.y * m - top * 2 * y1) / (m * m);
    return J;
}

double check_orthogonality(const HalfSpacePoint& p) {
    check_point(p);
    Eigen::MatrixXd J = jacobian_B(p);
    const double f = phi(p);
    Eigen::MatrixXd G = J * J.transpose();
    G.diagonal().array() -= f * f;
    return G.cwiseAbs().maxCoeff() / (f * f);
}

HalfSpacePoint sample_point(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> ux(-3.0, 3.0), uy(0.1, 3.0);
    HalfSpacePoint p;
    for (int i = 0; i < n; ++i) p.x.push_back(ux(rng));
    p.y = uy(rng);
    return p;
}

// ---------------------------------------------------------------------------
// MultiPoly

MultiPoly MultiPoly::constant(int vars, double c) {
    MultiPoly p(vars);
    p.add(Exponents(vars, 0), c);
    return p;
}

MultiPoly MultiPoly::coordinate(int vars, int i) {
    MultiPoly p(vars);
    Exponents e(vars, 0);
    e[i] = 1;
    p.add(e, 1.0);
    return p;
}

MultiPoly MultiPoly::norm_power(int vars, int power) {
    MultiPoly sq(vars);
    for (int i = 0; i < vars; ++i) {
        Exponents e(vars, 0);
        e[i] = 2;
        sq.add(e, 1.0);
    }
    MultiPoly out = constant(vars, 1.0);
    for (int i = 0; i < power; ++i) out = out * sq;
    return out;
}

void MultiPoly::add(const Exponents& e, double c) {
    if (static_cast<int>(e.size()) != vars_) throw std::domain_error("MultiPoly: exponent arity mismatch");
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

MultiPoly MultiPoly::derivative(int i) const {
    MultiPoly out(vars_);
    for (const auto& [e, c] : terms_) {
        if (e[i] == 0) continue;
        Exponents f = e;
        f[i] -= 1;
        out.add(f, c * e[i]);
    }
    return out;
}

MultiPoly MultiPoly::laplacian() const {
    MultiPoly out(vars_);
    for (int i = 0; i < vars_; ++i) out = out + derivative(i).derivative(i);
    return out;
}

MultiPoly MultiPoly::laplacian_power(int k) const {
    MultiPoly out = *this;
    for (int i = 0; i < k; ++i) out = out.laplacian();
    return out;
}

MultiPoly operator+(MultiPoly a, const MultiPoly& b) {
    for (const auto& [e, c] : b.terms_) a.add(e, c);
    return a;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly out(a.vars_);
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) {
            MultiPoly::Exponents e(a.vars_);
            for (int i = 0; i < a.vars_; ++i) e[i] = ea[i] + eb[i];
            out.add(e, ca * cb);
        }
    return out;
}

MultiPoly operator*(double s, MultiPoly a) {
    MultiPoly out(a.vars_);
    for (const auto& [e, c] : a.terms_) out.add(e, s * c);
    return out;
}

// ---------------------------------------------------------------------------
// TestField

TestField TestField::polynomial(MultiPoly p, std::string tag) {
    TestField f;
    f.family_ = Family::polynomial;
    f.vars_ = p.vars();
    f.poly_ = std::move(p);
    f.tag_ = std::move(tag);
    return f;
}

TestField TestField::gaussian(std::vector<double> center, double a, std::string tag) {
    if (!(a > 0)) throw std::domain_error("gaussian test field needs a > 0");
    TestField f;
    f.family_ = Family::gaussian;
    f.vars_ = static_cast<int>(center.size());
    f.center_ = std::move(center);
    f.a_ = a;
    f.tag_ = std::move(tag);
    return f;
}

namespace {

template <class Real>
Real gaussian_value(const std::vector<double>& center, double a, const std::vector<Real>& z) {
    using std::exp;
    Real rho = 0;
    for (std::size_t i = 0; i < center.size(); ++i) rho += (z[i] - center[i]) * (z[i] - center[i]);
    return exp(-a * rho);
}

// Delta^k exp(-a rho), rho = |z - c|^2, is q_k(rho) exp(-a rho) with
// q_{k+1} = 4 rho (q'' - 2a q' + a^2 q) + 2d (q' - a q).
std::vector<double> gaussian_laplacian_factor(int k, int d, double a) {
    std::vector<double> q{1.0};
    for (int step = 0; step < k; ++step) {
        std::vector<double> dq(q.size(), 0.0), ddq(q.size(), 0.0), next(q.size() + 1, 0.0);
        for (std::size_t i = 1; i < q.size(); ++i) dq[i - 1] = q[i] * static_cast<double>(i);
        for (std::size_t i = 1; i < dq.size(); ++i) ddq[i - 1] = dq[i] * static_cast<double>(i);
        for (std::size_t i = 0; i < q.size(); ++i) {
            double inner = ddq[i] - 2 * a * dq[i] + a * a * q[i];
            next[i + 1] += 4 * inner;
            next[i] += 2.0 * d * (dq[i] - a * q[i]);
        }
        q = std::move(next);
    }
    return q;
}

}  // namespace

double TestField::value(const std::vector<double>& z) const {
    return family_ == Family::polynomial ? poly_.value(z) : gaussian_value(center_, a_, z);
}

ExtReal TestField::value(const std::vector<ExtReal>& z) const {
    return family_ == Family::polynomial ? poly_.value(z) : gaussian_value(center_, a_, z);
}

std::vector<double> TestField::gradient(const std::vector<double>& z) const {
    std::vector<double> g(vars_);
    if (family_ == Family::polynomial) {
        for (int i = 0; i < vars_; ++i) g[i] = poly_.derivative(i).value(z);
    } else {
        double v = gaussian_value(center_, a_, z);
        for (int i = 0; i < vars_; ++i) g[i] = -2 * a_ * (z[i] - center_[i]) * v;
    }
    return g;
}

double TestField::laplacian_power(int k, const std::vector<double>& z) const {
    if (family_ == Family::polynomial) return poly_.laplacian_power(k).value(z);
    std::vector<double> q = gaussian_laplacian_factor(k, vars_, a_);
    double rho = 0;
    for (int i = 0; i < vars_; ++i) rho += (z[i] - center_[i]) * (z[i] - center_[i]);
    double s = 0, r = 1;
    for (double c : q) {
        s += c * r;
        r *= rho;
    }
    return s * std::exp(-a_ * rho);
}

// ---------------------------------------------------------------------------
// Identity checks

double default_step(const HalfSpacePoint& p) { return 1e-2 / phi(p); }

Residual check_phi_calculus(double a, const HalfSpacePoint& p, double step) {
    check_point(p);
    if (step <= 0) step = default_step(p);
    const int n = p.n();
    const std::vector<double> X = pack(p);
    Field<double> u = [a](const std::vector<double>& Z) { return std::pow(phi_at(Z), a); };
    const double f1 = std::pow(phi(p), a + 1);

    std::vector<double> grad = fd_gradient(u, X, step);
    std::vector<double> dir = radial_direction(p, 1.0);
    double grad_err = 0, grad_ref = 0;
    for (std::size_t i = 0; i < grad.size(); ++i) {
        double exact = -a * f1 * dir[i];
        grad_err = std::max(grad_err, std::abs(grad[i] - exact));
        grad_ref = std::max(grad_ref, std::abs(exact));
    }
    double gap = 0;
    double lap = fd_laplacian<double>(u, X, step, &gap);
    double exact_lap = -a * (n - 1 - 2 * a) * f1;

    Residual g{grad_err / std::max(grad_ref, f1), true};
    Residual l = relative(lap, exact_lap, f1, gap);
    return {std::max(g.value, l.value), l.step_ok};
}

Residual check_laplacian_identity(const TestField& F, const HalfSpacePoint& p, double step) {
    check_point(p);
    if (F.vars() != p.n() + 1) throw std::domain_error("test field arity must be n + 1");
    if (step <= 0) step = default_step(p);
    const int n = p.n();
    const std::vector<double> X = pack(p);
    Field<double> composed = [&F](const std::vector<double>& Z) { return F.value(B_at(Z)); };
    double gap = 0;
    const double f = phi(p);
    double lhs = fd_laplacian<double>(composed, X, step, &gap) / (f * f);

    std::vector<double> b = map_B(p);
    std::vector<double> grad = F.gradient(b);
    std::vector<double> dir = radial_direction(p, -1.0);
    double lapF = F.laplacian_power(1, b);
    double rhs = lapF + (n - 1) * dot(grad, dir);
    double scale = std::abs(lapF) + (n - 1) * norm(grad) * norm(dir);
    return relative(lhs, rhs, scale, gap / (f * f));
}

Residual check_gradient_identity(const TestField& F, const HalfSpacePoint& p, double step) {
    check_point(p);
    if (F.vars() != p.n() + 1) throw std::domain_error("test field arity must be n + 1");
    if (step <= 0) step = default_step(p);
    const std::vector<double> X = pack(p);
    Field<double> composed = [&F](const std::vector<double>& Z) { return F.value(B_at(Z)); };
    std::vector<double> grad_fd = fd_gradient(composed, X, step);
    double lhs = dot(grad_fd, radial_direction(p, 1.0));

    std::vector<double> b = map_B(p);
    std::vector<double> grad = F.gradient(b);
    std::vector<double> dir = radial_direction(p, -1.0);
    const double f = phi(p);
    double rhs = f * dot(grad, dir);
    return relative(lhs, rhs, f * norm(grad) * norm(dir));
}

namespace {

template <class Real>
double covariance_lhs(const TestField& F, int kk, const HalfSpacePoint& p, double step, double* gap_out) {
    using std::pow;
    const double e_left = (p.n() + 1 - 2.0 * kk) / 2;
    std::vector<Real> X;
    for (double v : pack(p)) X.push_back(Real(v));
    Field<Real> u = [&F, e_left](const std::vector<Real>& Z) {
        return Real(F.value(B_at(Z))) * pow(phi_at(Z), Real(e_left));
    };
    Real gap = 0;
    Real value = fd_laplacian_power<Real>(u, kk, X, Real(step), &gap);
    *gap_out = static_cast<double>(gap);
    return static_cast<double>(value);
}

}  // namespace

Residual check_conformal_covariance(const TestField& F, int kk, const HalfSpacePoint& p, double step,
                                    Precision precision) {
    check_point(p);
    if (kk < 1 || kk > 3) throw std::domain_error("covariance check supports k = 1, 2, 3");
    if (!(p.n() > 2 * kk)) throw std::domain_error("covariance check requires n > 2k");
    if (F.vars() != p.n() + 1) throw std::domain_error("test field arity must be n + 1");
    if (step <= 0) step = default_step(p);
    double gap = 0;
    double lhs = precision == Precision::extended ? covariance_lhs<ExtReal>(F, kk, p, step, &gap)
                                                  : covariance_lhs<double>(F, kk, p, step, &gap);
    const double f = phi(p);
    const double e_right = (p.n() + 1 + 2.0 * kk) / 2;
    std::vector<double> b = map_B(p);
    double rhs = F.laplacian_power(kk, b) * std::pow(f, e_right);
    double scale = std::abs(F.value(b)) + norm(F.gradient(b));
    for (int j = 1; j <= kk; ++j) scale += std::abs(F.laplacian_power(j, b));
    scale *= std::pow(f, e_right);
    return relative(lhs, rhs, scale, gap);
}

Residual check_covariant_shift(const MultiPoly& u, int m, const HalfSpacePoint& p, double step) {
    check_point(p);
    if (m < 0 || m > 2) throw std::domain_error("covariant shift check supports m = 0, 1, 2");
    const int d = p.n() + 1;
    if (u.vars() != d) throw std::domain_error("polynomial arity must be n + 1");
    if (step <= 0) step = default_step(p);
    const std::vector<double> X = pack(p);

    // Phi^{-1} = ((1+y)^2 + |x|^2) / 2 is itself a polynomial.
    MultiPoly inv_phi(d);
    MultiPoly shifted_y = MultiPoly::coordinate(d, d - 1) + MultiPoly::constant(d, 1.0);
    inv_phi = 0.5 * (shifted_y * shifted_y);
    for (int i = 0; i < d - 1; ++i) {
        MultiPoly xi = MultiPoly::coordinate(d, i);
        inv_phi = inv_phi + 0.5 * (xi * xi);
    }

    MultiPoly lap_m = u.laplacian_power(m);
    Field<double> inner = [&lap_m, m](const std::vector<double>& Z) {
        return std::pow(phi_at(Z), -m - 1.0) * lap_m.value(Z);
    };
    double gap = 0;
    double lhs = fd_laplacian<double>(inner, X, step, &gap);
    const double f = phi(p);
    double rhs = std::pow(f, -m) * (inv_phi * u).laplacian_power(m + 1).value(X);
    double scale = std::abs(rhs) + std::pow(f, 1.0 - m) * std::abs(lap_m.value(X));
    return relative(lhs, rhs, scale, gap);
}

}  // namespace sobtrace
