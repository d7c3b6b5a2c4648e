#pragma once

#include <functional>
#include <stdexcept>

namespace friable {

// Tolerances and truncation limits governing all numerical integration,
// series summation and DDE stepping in this library.
struct QuadratureConfig {
    double abs_tol          = 1e-10;
    double rel_tol          = 1e-10;
    int    max_subdivisions = 1 << 16;
    double series_tail_tol  = 1e-12;
    double dde_grid_step    = 1.0 / 1024;

    void validate() const {
        if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || !(series_tail_tol > 0.0))
            throw std::invalid_argument("QuadratureConfig: tolerances must be strictly positive");
        if (max_subdivisions < 2)
            throw std::invalid_argument("QuadratureConfig: max_subdivisions must be >= 2");
        if (!(dde_grid_step > 0.0) || dde_grid_step > 1.0 / 64)
            throw std::invalid_argument("QuadratureConfig: dde_grid_step must lie in (0, 1/64]");
    }
};

// Adaptive Simpson with Richardson extrapolation.  The subdivision budget is
// shared across the whole interval; running out stops refinement rather than
// throwing (the returned value is then the best estimate so far).
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, double rel_tol, int max_subdivisions);

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               const QuadratureConfig& cfg) {
    return adaptive_simpson(f, a, b, cfg.abs_tol, cfg.rel_tol, cfg.max_subdivisions);
}

} // namespace friable
