// Fourier-side profiles for the half-space trace inequalities: bounded
// solutions p(y) e^{-y} of (d^2/dy^2 - 1)^m phi = 0 and their energies.
#pragma once

#include <string>
#include <utility>

#include "sobtrace/exact.hpp"

namespace sobtrace {

struct ExpPolyProfile {
    int m = 2;
    Rat lambda;
    UPoly<Rat> p;  // phi(y) = p(y) e^{-y}
};

/// p with coefficients polynomial in lambda, fixed by phi(0) = 1,
/// phi'(0) = 0, phi''(0) = -lambda (m >= 3) and phi'''(0) = 0 (m = 4).
UPoly<RationalPoly> profile_symbolic(int m);

ExpPolyProfile profile(int m, const Rat& lambda = Rat(0));

/// (d^2/dy^2 - 1)^m applied to p e^{-y}, returned as the polynomial factor
/// of e^{-y}; zero for a genuine solution.
UPoly<RationalPoly> profile_ode_residual(int m);

/// Energy as a polynomial in lambda:
///   m = 2: int (phi'' - phi)^2
///   m = 3: int (phi'' - phi)^2 + (phi''' - phi')^2
///   m = 4: int (phi'''' - 2 phi'' + phi)^2
RationalPoly profile_energy_poly(int m);
Rat profile_energy(int m, const Rat& lambda = Rat(0));

/// Minimiser of the energy in lambda and the minimum value (m = 3, 4).
std::pair<Rat, Rat> optimal_lambda(int m);

/// sqrt(pi) Gamma(m) / Gamma(m - 1/2), exactly.
Rat halfspace_prefactor(int m);

/// Which interior energy each order's half-space profile measures.
std::string halfspace_energy_note(int m);

}  // namespace sobtrace
