#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "friable/quadrature.hpp"

namespace friable {

// Arguments of the mu_k family: u = log x / log y, truncation height v,
// sieve dimension kappa, recursion depth k.
struct MuParams {
    double u     = 1.0;
    double v     = 0.0;
    double kappa = 1.0;
    int    k     = 1;

    void validate() const;
};

// A distribution-exponent setting: which lower-bound regime applies.
struct ThetaProfile {
    double      theta = 0.5;   // exponent of distribution
    double      kappa = 1.0;   // sieve dimension
    double      delta = 1.0;   // remainder exponent in the (C_theta) bound
    std::string label;

    void validate() const;

    static ThetaProfile harper_half();
    static ThetaProfile pascadi_58();
    static ThetaProfile elliott_halberstam(double eps = 1e-3);
};

// Dickman's function: 1 on [0,1], u rho'(u) + rho(u-1) = 0 beyond.
// Closed forms on [0,2]; dense-grid stepping of the delay equation above.
// Desk range: u <= 64.
double dickman_rho(double u, const QuadratureConfig& cfg = {});

// f_k(u; t_1..t_k) = prod_i 1/(u - t_1 - ... - t_i).  Empty product = 1.
// Any partial sum >= u is a pole and raises a domain error.
double f_k(double u, std::span<const double> t);

// mu_k(u,v) through the one-dimensional recursion
//   u mu_k(u,v) = int_{max(1,u-1)}^{u} mu_{k-1}(s,v) ds   (u > 1, k >= 2),
// with the closed-form mu_1 as base case.  Exactly 0 for u <= 1, k >= 2.
double mu_k(const MuParams& params, const QuadratureConfig& cfg = {});

// Independent evaluation of mu_k by direct integration over the simplex
// region V_k(u,v); nested adaptive quadrature for k <= 4, quasi-random nodes
// (>= 10^6, Kronecker sequence shifted by `seed`) for larger k.
double mu_k_direct(const MuParams& params, const QuadratureConfig& cfg = {},
                   uint64_t seed = 42);

// mu^(kappa)(u,v) = sum_{k>=1} kappa^k mu_k(u,v), truncated once the term
// drops below cfg.series_tail_tol and k >= ceil(u)+2.
double mu_series(double u, double v, double kappa, const QuadratureConfig& cfg = {});

// Closed forms of mu^(kappa) for u <= 2 (with the explicit kappa -> 1 limit
// on the branch 1+v < u <= 2), and dense-grid integration of
//   u d/du mu + (1-kappa) mu + kappa mu(u-1,v) = 0
// for u > 2, seeded by the closed forms.
double mu_closed(double u, double v, double kappa, const QuadratureConfig& cfg = {});

// rho_{theta,kappa}(u) = mu^(kappa)(u, (1-theta)u).  Uses the piecewise
// closed forms where they apply (theta <= 1/2; 1/2 < theta <= 2/3 with
// kappa = 1) and mu_closed otherwise.  Requires (1-theta)u < 1, except at
// equality on a closed-form branch (value 0 there).
double rho_theta(double u, const ThetaProfile& profile, const QuadratureConfig& cfg = {});

// Euler Gamma, relative error <= 1e-10; x > 0.
double gamma_eu(double x);

} // namespace friable
