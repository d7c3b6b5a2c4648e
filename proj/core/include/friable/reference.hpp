#pragma once

// Reference implementations kept deliberately naive and independent of the
// production code paths; they exist to verify, never to serve queries.

#include <cstdint>
#include <vector>

#include "friable/polyvals.hpp"

namespace friable::reference {

// Dickman rho by iterated adaptive quadrature of the integrated delay
// equation rho(u) = rho(m) - int_m^u rho(s-1)/s ds on (m, m+1], rho = 1 on
// [0,1].  Nesting depth is floor(u) - 1; no grids, no closed forms.
double rho_iterated(double u, double tol = 1e-11);

// Euler Gamma by quadrature of int_0^inf t^(x-1) e^(-t) dt.
double gamma_quadrature(double x, double tol = 1e-12);

// Largest prime factor by naive trial division; P+(1) = 1.
uint64_t largest_prime_factor(uint64_t n);

bool is_smooth(uint64_t n, uint64_t y);

// Psi(x, y) by per-integer trial division.
uint64_t psi_enumeration(uint64_t x, uint64_t y);

// Roots of F mod m by scanning every residue.
std::vector<uint64_t> roots_mod_brute(const IntPolynomial& F, uint64_t m);

// #{n <= x : F(n) != 0, P+(|F(n)|) <= y} by factoring every value.
uint64_t psi_poly_enumeration(const IntPolynomial& F, uint64_t x, uint64_t y);

// Pair count for a binary form by factoring every value.
uint64_t psi_binary_enumeration(const BinaryForm& F, uint64_t x, uint64_t y,
                                bool coprime_only);

} // namespace friable::reference
