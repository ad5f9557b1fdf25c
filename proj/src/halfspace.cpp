#include "sobtrace/halfspace.hpp"

#include <stdexcept>

namespace sobtrace {

namespace {

using SymPoly = UPoly<RationalPoly>;

void check_profile_order(int m) {
    if (m < 2 || m > 4) throw std::domain_error("half-space profiles exist for m = 2, 3, 4");
}

// d/dy acting on q(y) e^{-y}, expressed on q: q' - q.
SymPoly D(const SymPoly& q) { return q.derivative() - q; }

SymPoly D(const SymPoly& q, int times) {
    SymPoly out = q;
    for (int i = 0; i < times; ++i) out = D(out);
    return out;
}

SymPoly square(const SymPoly& q) { return q * q; }

Rat binomial(int a, int b) { return factorial(a) / (factorial(b) * factorial(a - b)); }

}  // namespace

UPoly<RationalPoly> profile_symbolic(int m) {
    check_profile_order(m);
    const RationalPoly lambda = RationalPoly::var(Var::lambda);
    // Prescribed phi^{(i)}(0), i = 0..m-1.
    std::vector<RationalPoly> target{RationalPoly(1), RationalPoly(0)};
    if (m >= 3) target.push_back(-lambda);
    if (m >= 4) target.push_back(RationalPoly(0));

    // phi^{(i)}(0) = sum_{j<=i} p_j C(i,j) j! (-1)^{i-j}: lower triangular
    // with diagonal i!, solved by forward substitution.
    SymPoly p;
    for (int i = 0; i < m; ++i) {
        RationalPoly rest = target[i];
        for (int j = 0; j < i; ++j) {
            Rat a = binomial(i, j) * factorial(j) * Rat((i - j) % 2 == 0 ? 1 : -1);
            rest -= p.c[j] * a;
        }
        p.c.push_back(rest * (Rat(1) / factorial(i)));
    }
    return p;
}

ExpPolyProfile profile(int m, const Rat& lambda) {
    SymPoly sym = profile_symbolic(m);
    ExpPolyProfile out{m, lambda, {}};
    for (const RationalPoly& c : sym.c) out.p.c.push_back(c.eval(Rat(0), Rat(0), lambda));
    return out;
}

UPoly<RationalPoly> profile_ode_residual(int m) {
    SymPoly q = profile_symbolic(m);
    for (int i = 0; i < m; ++i) q = D(q, 2) - q;
    return q;
}

RationalPoly profile_energy_poly(int m) {
    SymPoly phi = profile_symbolic(m);
    SymPoly integrand;
    switch (m) {
        case 2:
            integrand = square(D(phi, 2) - phi);
            break;
        case 3:
            integrand = square(D(phi, 2) - phi) + square(D(phi, 3) - D(phi, 1));
            break;
        default:
            integrand = square(D(phi, 4) - RationalPoly(2) * D(phi, 2) + phi);
            break;
    }
    // Products of two q e^{-y} factors carry e^{-2y}.
    return exppoly_integral(integrand, Rat(2));
}

Rat profile_energy(int m, const Rat& lambda) { return profile_energy_poly(m).eval(Rat(0), Rat(0), lambda); }

std::pair<Rat, Rat> optimal_lambda(int m) {
    if (m != 3 && m != 4) throw std::domain_error("optimal_lambda: only orders m = 3 and m = 4 carry lambda");
    RationalPoly e = profile_energy_poly(m);
    if (e.degree_in(Var::lambda) != 2) throw std::logic_error("energy is not quadratic in lambda");
    Rat a = e.coeff_in(Var::lambda, 2).constant_term();
    Rat b = e.coeff_in(Var::lambda, 1).constant_term();
    if (a.sign() <= 0) throw std::logic_error("energy is not convex in lambda");
    Rat vertex = -b / (Rat(2) * a);
    return {vertex, profile_energy(m, vertex)};
}

Rat halfspace_prefactor(int m) {
    if (m < 1) throw std::domain_error("halfspace_prefactor: m must be positive");
    HalfGamma sqrt_pi{Rat(1), 1};
    HalfGamma value = sqrt_pi * gamma_half(Rat(m)) / gamma_half(Rat(2 * m - 1, 2));
    if (value.sqrt_pi_exponent != 0) throw std::logic_error("prefactor is not rational");
    return value.rational_part;
}

std::string halfspace_energy_note(int m) {
    switch (m) {
        case 2:
            return "energy int (Delta U)^2; Fourier profile (phi'' - phi)^2";
        case 3:
            return "energy int |grad Delta U|^2; Fourier profile (phi'' - phi)^2 + (phi''' - phi')^2";
        case 4:
            return "energy int (Delta^2 U)^2; Fourier profile (phi'''' - 2 phi'' + phi)^2. The stated order-eight "
                   "half-space theorem writes the energy as int |grad Delta U|^2, but only (Delta^2 U)^2 reproduces "
                   "the constant 20 lambda^2 - 8 lambda + 4";
        default:
            return "";
    }
}

}  // namespace sobtrace
