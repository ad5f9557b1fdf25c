// Polyharmonic extensions of zonal data into the unit ball with Neumann-type
// boundary conditions, and their interior energies.
#pragma once

#include <string>
#include <vector>

#include "sobtrace/exact.hpp"
#include "sobtrace/sphere.hpp"

namespace sobtrace {

/// Prescribed value of the i-th radial derivative of f_k at r = 1:
/// d_i(K) = u + v K with K = k(n-1+k).
struct BoundaryForm {
    Rat u;
    Rat v;
    Rat at(const Rat& K) const { return u + v * K; }
};

struct BoundaryConditionSet {
    int m = 1;  // operator order 2m
    int n = 1;
    std::vector<BoundaryForm> forms;  // i = 0..m-1, forms[0] = {1, 0}
};

/// Symbolic forms: element i is u_i(n) + v_i(n) K as a polynomial in (k, n).
std::vector<RationalPoly> boundary_forms(int m);

/// The forms at a fixed dimension.
BoundaryConditionSet boundary_conditions(int m, int n);

/// Exact coefficients c_0..c_{m-1} of f_k(r) = sum_j c_j r^{k+2j}, from a
/// rational Gaussian elimination at fixed (n, k).
std::vector<Rat> radial_coefficients(int m, int n, int k);

/// The same coefficients as polynomials in (k, n), by Cramer's rule; the
/// system determinant is a nonzero constant so no denominators appear.
std::vector<RationalPoly> radial_coefficient_polys(int m);

/// L_k applied to sum_j a_j r^{k+2j}, returned in the same basis (one term
/// shorter): L_k r^{k+2j} = 2j(2k + 2j + n - 1) r^{k+2j-2}.
std::vector<RationalPoly> apply_radial_laplacian(const std::vector<RationalPoly>& profile);

/// S_{2m}(k, n): the interior energy of the order-2m extension equals
/// sum_k S_{2m}(k, n) int |Y_k|^2. Obtained by exact term-wise radial
/// integration followed by exact division of the linear denominators.
RationalPoly interior_energy_coefficient(int m);

/// S_{2m}(k, n) at fixed integers by summing the rational radial integrals
/// directly (independent of the polynomial route).
Rat interior_energy_value(int m, int n, int k);

/// The closed forms displayed for S_{2m}: k, (n+1+2k)(n-3+2k)^2/4,
/// (n-5+2k)^2(12k^2+8kn+n^2-6n+9)(n+3+2k)/36 and, for m = 4, the published
/// (n+5+2k)(n-7+2k)P(k,n)/100.
RationalPoly interior_energy_closed_form(int m);

/// The closed forms displayed for the radial coefficients, m = 2 and m = 3.
std::vector<RationalPoly> radial_coefficients_closed_form(int m);

struct PolyharmonicExtension {
    int m = 1;
    int n = 1;
    ZonalFunction boundary;
    std::vector<std::vector<Rat>> coeffs;  // coeffs[k][j]
};

PolyharmonicExtension make_extension(int m, const ZonalFunction& f);

/// sum_k S_{2m}(k, n) mode_norms[k].
double interior_energy_spectral(const PolyharmonicExtension& ext);

/// The interior energy by per-mode Gauss-Legendre integration of the radial
/// densities (degree 0 selects 4*kmax + 32 nodes). With `warnings`, the
/// value is recomputed with doubled nodes and instability is reported.
double interior_energy_quadrature(const PolyharmonicExtension& ext, int quad_degree = 0,
                                  std::vector<std::string>* warnings = nullptr);

/// True iff every f_k satisfies the boundary system exactly.
bool verify_boundary(const PolyharmonicExtension& ext);

/// Applies L_k m times to f_k symbolically; true iff the result vanishes.
bool verify_polyharmonic(int m, int n, int k);

}  // namespace sobtrace
