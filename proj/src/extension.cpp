#include "sobtrace/extension.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace sobtrace {

namespace {

RationalPoly K() { return RationalPoly::var(Var::k); }
RationalPoly N() { return RationalPoly::var(Var::n); }
RationalPoly C(long long p, long long q = 1) { return RationalPoly(Rat(p, q)); }

void check_order(int m) {
    if (m < 1 || m > 4) throw std::domain_error("unsupported order: m must be 1..4");
}

// x (x-1) ... (x-i+1) for x = k + 2j.
RationalPoly falling_poly(int j, int i) {
    RationalPoly out(1);
    for (int s = 0; s < i; ++s) out *= K() + C(2 * j - s);
    return out;
}

Rat falling(const Rat& x, int i) {
    Rat out(1);
    for (int s = 0; s < i; ++s) out *= x - Rat(s);
    return out;
}

RationalPoly determinant(std::vector<std::vector<RationalPoly>> a) {
    const std::size_t size = a.size();
    if (size == 1) return a[0][0];
    RationalPoly det;
    for (std::size_t col = 0; col < size; ++col) {
        if (a[0][col].is_zero()) continue;
        std::vector<std::vector<RationalPoly>> minor;
        for (std::size_t r = 1; r < size; ++r) {
            std::vector<RationalPoly> row;
            for (std::size_t c = 0; c < size; ++c)
                if (c != col) row.push_back(a[r][c]);
            minor.push_back(std::move(row));
        }
        RationalPoly term = a[0][col] * determinant(std::move(minor));
        if (col % 2 == 0)
            det += term;
        else
            det -= term;
    }
    return det;
}

std::vector<Rat> solve_rational(std::vector<std::vector<Rat>> a, std::vector<Rat> b) {
    const std::size_t size = b.size();
    for (std::size_t col = 0; col < size; ++col) {
        std::size_t pivot = col;
        while (pivot < size && a[pivot][col].is_zero()) ++pivot;
        if (pivot == size) throw std::logic_error("boundary system is singular");
        std::swap(a[pivot], a[col]);
        std::swap(b[pivot], b[col]);
        for (std::size_t r = 0; r < size; ++r) {
            if (r == col || a[r][col].is_zero()) continue;
            Rat f = a[r][col] / a[col][col];
            for (std::size_t c = col; c < size; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    for (std::size_t i = 0; i < size; ++i) b[i] /= a[i][i];
    return b;
}

// Concrete L_k on a profile with coefficients of r^{k+2j}.
std::vector<Rat> apply_L(const std::vector<Rat>& a, int n, int k) {
    std::vector<Rat> out;
    for (std::size_t j = 1; j < a.size(); ++j) {
        long long jj = static_cast<long long>(j);
        out.push_back(a[j] * Rat(2 * jj * (2LL * k + 2 * jj + n - 1)));
    }
    return out;
}

enum class EnergyKind { gradient, value };

// Which derived profile is integrated, and how, for each order.
EnergyKind kind_for(int m) { return (m % 2 == 1) ? EnergyKind::gradient : EnergyKind::value; }

}  // namespace

std::vector<RationalPoly> boundary_forms(int m) {
    check_order(m);
    RationalPoly kk = casimir_poly();
    RationalPoly n = N();
    std::vector<RationalPoly> d{C(1)};
    if (m == 2) {
        d.push_back(-(n - C(3)) * Rat(1, 2));
    } else if (m == 3) {
        d.push_back(-(n - C(5)) * Rat(1, 2));
        d.push_back(-kk * Rat(1, 3) + (n - C(5)) * (n - C(6)) * Rat(1, 6));
    } else if (m == 4) {
        d.push_back(-(n - C(7)) * Rat(1, 2));
        d.push_back(-kk * Rat(1, 5) + (n - C(7)) * (C(2) * n - C(15)) * Rat(1, 10));
        d.push_back((n - C(5)) * kk * Rat(3, 10) - (n - C(5)) * (n - C(7)) * (n - C(15)) * Rat(1, 20));
    }
    return d;
}

BoundaryConditionSet boundary_conditions(int m, int n) {
    check_order(m);
    if (n < 1) throw std::domain_error("boundary_conditions: dimension must be positive");
    BoundaryConditionSet set{m, n, {}};
    RationalPoly kk = casimir_poly();
    for (const RationalPoly& form : boundary_forms(m)) {
        // form = u(n) + v(n) K; read u at K = 0 (k = 0) and v from the k^2 coefficient.
        RationalPoly v = form.coeff_in(Var::k, 2);
        RationalPoly u = form - v * kk;
        if (u.degree_in(Var::k) > 0) throw std::logic_error("boundary form is not affine in K");
        set.forms.push_back({u.eval(Rat(0), Rat(n)), v.eval(Rat(0), Rat(n))});
    }
    return set;
}

std::vector<Rat> radial_coefficients(int m, int n, int k) {
    check_order(m);
    if (k < 0) throw std::domain_error("radial_coefficients: negative mode");
    BoundaryConditionSet bc = boundary_conditions(m, n);
    Rat kk = Rat(k) * Rat(n - 1 + k);
    std::vector<std::vector<Rat>> a(m, std::vector<Rat>(m));
    std::vector<Rat> rhs(m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) a[i][j] = falling(Rat(k + 2 * j), i);
        rhs[i] = bc.forms[i].at(kk);
    }
    return solve_rational(std::move(a), std::move(rhs));
}

std::vector<RationalPoly> radial_coefficient_polys(int m) {
    check_order(m);
    std::vector<RationalPoly> d = boundary_forms(m);
    std::vector<std::vector<RationalPoly>> a(m, std::vector<RationalPoly>(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) a[i][j] = falling_poly(j, i);
    RationalPoly det = determinant(a);
    if (!det.is_constant() || det.is_zero()) throw std::logic_error("boundary system determinant is not a constant");
    Rat inv = Rat(1) / det.constant_term();
    std::vector<RationalPoly> c;
    for (int j = 0; j < m; ++j) {
        auto aj = a;
        for (int i = 0; i < m; ++i) aj[i][j] = d[i];
        c.push_back(determinant(std::move(aj)) * inv);
    }
    return c;
}

std::vector<RationalPoly> apply_radial_laplacian(const std::vector<RationalPoly>& profile) {
    std::vector<RationalPoly> out;
    for (std::size_t j = 1; j < profile.size(); ++j) {
        long long jj = static_cast<long long>(j);
        out.push_back(profile[j] * (C(2 * jj) * (C(2) * K() + N() + C(2 * jj - 1))));
    }
    return out;
}

namespace {

// Derived profile whose energy is taken: f, L f, L f, L^2 f for m = 1..4.
int laplacian_count(int m) { return m / 2; }

}  // namespace

RationalPoly interior_energy_coefficient(int m) {
    check_order(m);
    std::vector<RationalPoly> g = radial_coefficient_polys(m);
    for (int s = 0; s < laplacian_count(m); ++s) g = apply_radial_laplacian(g);
    const bool gradient = kind_for(m) == EnergyKind::gradient;
    RationalPoly kk = casimir_poly();

    // Group the terms a_i a_j w_ij / (2k + n + e) by the offset e.
    std::map<int, RationalPoly> groups;
    for (std::size_t i = 0; i < g.size(); ++i) {
        for (std::size_t j = 0; j < g.size(); ++j) {
            RationalPoly num = g[i] * g[j];
            int e = 2 * static_cast<int>(i + j);
            if (gradient) {
                num *= (K() + C(2 * static_cast<long long>(i))) * (K() + C(2 * static_cast<long long>(j))) + kk;
                e -= 1;
            } else {
                e += 1;
            }
            groups[e] += num;
        }
    }
    auto denom = [](int e) { return C(2) * K() + N() + C(e); };
    RationalPoly total;
    for (const auto& [e, num] : groups) {
        RationalPoly term = num;
        for (const auto& [other, unused] : groups)
            if (other != e) term *= denom(other);
        total += term;
    }
    for (const auto& [e, unused] : groups) {
        PolyDivision qr = divide_in(total, denom(e), Var::k);
        if (!qr.remainder.is_zero())
            throw std::logic_error("interior energy is not a polynomial in (k, n)");
        total = qr.quotient;
    }
    return total;
}

Rat interior_energy_value(int m, int n, int k) {
    check_order(m);
    std::vector<Rat> g = radial_coefficients(m, n, k);
    for (int s = 0; s < laplacian_count(m); ++s) g = apply_L(g, n, k);
    const bool gradient = kind_for(m) == EnergyKind::gradient;
    Rat kk = Rat(k) * Rat(n - 1 + k);
    Rat sum(0);
    for (std::size_t i = 0; i < g.size(); ++i) {
        for (std::size_t j = 0; j < g.size(); ++j) {
            long long ii = static_cast<long long>(i), jj = static_cast<long long>(j);
            Rat num = g[i] * g[j];
            long long e = 2 * (ii + jj);
            if (gradient) {
                num *= Rat(k + 2 * ii) * Rat(k + 2 * jj) + kk;
                e -= 1;
            } else {
                e += 1;
            }
            if (num.is_zero()) continue;
            sum += num / Rat(2LL * k + n + e);
        }
    }
    return sum;
}

RationalPoly interior_energy_closed_form(int m) {
    check_order(m);
    RationalPoly k = K(), n = N();
    switch (m) {
        case 1:
            return k;
        case 2:
            return (n + C(1) + C(2) * k) * pow(n - C(3) + C(2) * k, 2) * Rat(1, 4);
        case 3:
            return pow(n - C(5) + C(2) * k, 2) *
                   (C(12) * k * k + C(8) * k * n + n * n - C(6) * n + C(9)) * (n + C(3) + C(2) * k) * Rat(1, 36);
        default: {
            auto mono = [](long long c, int a, int b) { return RationalPoly::monomial(Rat(c), {a, b, 0}); };
            RationalPoly p = mono(80, 5, 0) + mono(160, 4, 1) + mono(120, 3, 2) + mono(40, 2, 3) + mono(5, 1, 4) -
                             mono(208, 4, 0) - mono(336, 3, 1) - mono(192, 2, 2) - mono(44, 1, 3) - mono(3, 0, 4) -
                             mono(184, 3, 0) - mono(136, 2, 1) + mono(2, 1, 2) + mono(12, 0, 3) + mono(912, 2, 0) +
                             mono(732, 1, 1) + mono(138, 0, 2) - mono(375, 1, 0) - mono(285, 0, 1) - mono(1680, 0, 0);
            return (n + C(5) + C(2) * k) * (n - C(7) + C(2) * k) * p * Rat(1, 100);
        }
    }
}

std::vector<RationalPoly> radial_coefficients_closed_form(int m) {
    RationalPoly k = K(), n = N();
    if (m == 2) return {(n + C(1) + C(2) * k) * Rat(1, 4), -(n - C(3) + C(2) * k) * Rat(1, 4)};
    if (m == 3)
        return {(n + C(1) + C(2) * k) * (n + C(3) + C(2) * k) * Rat(1, 48),
                -(n - C(5) + C(2) * k) * (n + C(3) + C(2) * k) * Rat(1, 24),
                (n - C(5) + C(2) * k) * (n - C(3) + C(2) * k) * Rat(1, 48)};
    throw std::domain_error("closed-form radial coefficients exist for m = 2 and m = 3 only");
}

PolyharmonicExtension make_extension(int m, const ZonalFunction& f) {
    check_order(m);
    PolyharmonicExtension ext{m, f.n(), f, {}};
    for (int k = 0; k <= f.kmax(); ++k) ext.coeffs.push_back(radial_coefficients(m, f.n(), k));
    return ext;
}

double interior_energy_spectral(const PolyharmonicExtension& ext) {
    RationalPoly s = interior_energy_coefficient(ext.m);
    double total = 0.0;
    const auto& norms = ext.boundary.mode_norms();
    for (std::size_t k = 0; k < norms.size(); ++k) {
        if (norms[k] == 0.0) continue;
        total += s.eval(Rat(static_cast<long long>(k)), Rat(ext.n)).to_double() * norms[k];
    }
    return total;
}

namespace {

double mode_energy_quadrature(const PolyharmonicExtension& ext, int k, const QuadRule& rule) {
    std::vector<Rat> g = ext.coeffs[k];
    for (int s = 0; s < laplacian_count(ext.m); ++s) g = apply_L(g, ext.n, k);
    std::vector<double> a;
    for (const Rat& c : g) a.push_back(c.to_double());
    const bool gradient = kind_for(ext.m) == EnergyKind::gradient;
    const double kk = static_cast<double>(k) * (ext.n - 1 + k);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        double r = (rule.nodes[i] + 1) / 2;
        double w = rule.weights[i] / 2;
        double value = 0.0, slope_over_r = 0.0;
        for (std::size_t j = 0; j < a.size(); ++j) {
            double e = k + 2.0 * static_cast<double>(j);
            value += a[j] * std::pow(r, e);
            if (e != 0) slope_over_r += a[j] * e * std::pow(r, e - 2);
        }
        double rn = std::pow(r, ext.n);
        if (gradient) {
            double value_over_r = k == 0 ? 0.0 : value / r;
            // (g'^2 + K g^2 / r^2) r^n with g' = r * slope_over_r
            sum += w * (r * r * slope_over_r * slope_over_r + kk * value_over_r * value_over_r) * rn;
        } else {
            sum += w * value * value * rn;
        }
    }
    return sum;
}

double energy_with(const PolyharmonicExtension& ext, int quad_degree) {
    QuadRule rule = gauss_legendre(quad_degree);
    const auto& norms = ext.boundary.mode_norms();
    double total = 0.0;
    for (int k = 0; k < static_cast<int>(norms.size()); ++k) {
        if (norms[k] == 0.0) continue;
        total += mode_energy_quadrature(ext, k, rule) * norms[k];
    }
    return total;
}

}  // namespace

double interior_energy_quadrature(const PolyharmonicExtension& ext, int quad_degree,
                                  std::vector<std::string>* warnings) {
    if (quad_degree <= 0) quad_degree = default_quad_degree(ext.boundary.kmax());
    double value = energy_with(ext, quad_degree);
    if (warnings != nullptr) {
        double refined = energy_with(ext, 2 * quad_degree);
        double rel = std::abs(refined - value) / std::max(std::abs(refined), 1e-300);
        if (rel > 1e-9) {
            std::ostringstream os;
            os << "radial quadrature unstable under node doubling: relative change " << rel;
            warnings->push_back(os.str());
        }
    }
    return value;
}

bool verify_boundary(const PolyharmonicExtension& ext) {
    BoundaryConditionSet bc = boundary_conditions(ext.m, ext.n);
    for (std::size_t k = 0; k < ext.coeffs.size(); ++k) {
        long long kl = static_cast<long long>(k);
        Rat kk = Rat(kl) * Rat(ext.n - 1 + kl);
        for (int i = 0; i < ext.m; ++i) {
            Rat lhs(0);
            for (std::size_t j = 0; j < ext.coeffs[k].size(); ++j)
                lhs += ext.coeffs[k][j] * falling(Rat(kl + 2 * static_cast<long long>(j)), i);
            if (lhs != bc.forms[i].at(kk)) return false;
        }
    }
    return true;
}

bool verify_polyharmonic(int m, int n, int k) {
    // Terms c r^e kept as (exponent, coefficient); L maps c r^e to
    // c (e(e-1) + n e - K) r^{e-2}, with nothing dropped.
    std::map<long long, Rat> g;
    std::vector<Rat> c = radial_coefficients(m, n, k);
    for (std::size_t j = 0; j < c.size(); ++j) g[k + 2 * static_cast<long long>(j)] += c[j];
    const Rat kk = Rat(k) * Rat(n - 1 + k);
    for (int s = 0; s < m; ++s) {
        std::map<long long, Rat> next;
        for (const auto& [e, coeff] : g) {
            Rat factor = Rat(e) * Rat(e - 1) + Rat(n) * Rat(e) - kk;
            Rat v = coeff * factor;
            if (!v.is_zero()) next[e - 2] += v;
        }
        g = std::move(next);
    }
    return std::all_of(g.begin(), g.end(), [](const auto& term) { return term.second.is_zero(); });
}

}  // namespace sobtrace
